#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "legfact/dirichlet.hpp"
#include "legfact/factorial.hpp"

namespace legfact {

/// Result of fitting S(x) ~ a x log x + C x over a set of sample points.
/// remainder_profile holds (x, R(x)/x) with R computed against the pinned
/// model a = 1/c, C = pinned-fit constant.  c_star_placeholder is the
/// coefficient of a possible exceptional-zero term x^beta; it is always 0
/// here since no such zero is accessible for the supported small
/// discriminants (see README).
struct FitReport {
    double a_hat = 0.0;
    double C_hat = 0.0;
    double a_theory = 0.0; // 1/c
    std::vector<std::int64_t> sample_xs;
    double residual_max_rel = 0.0;
    std::vector<std::pair<double, double>> remainder_profile;
    double c_star_placeholder = 0.0;
};

struct DecayCheck {
    bool passed = false;
    double slope = 0.0; // least-squares slope of log|R/x| against sqrt(log x)
    int samples_used = 0;
    std::string message;
};

struct CrossCheck {
    double delta_a = 0.0; // |laurent.leading - fit.a_hat|
    double delta_c = 0.0; // |(laurent.subleading - laurent.leading) - fit.C_hat|
    bool a_ok = false;
    bool c_ok = false;
};

/// Weighted least squares (weight 1/x) of S(x) against {x log x, x}.
/// Requires >= 8 strictly increasing samples >= 100 spanning two decades,
/// all <= table.x_max.
FitReport fit_main_terms(const IncrementTable& table,
                         const std::vector<std::int64_t>& sample_xs);

/// Pass iff the least-squares slope of log|R(x)/x| against sqrt(log x) is
/// negative, over samples with |R(x)/x| above the floating-point noise floor
/// 10 * eps * log x.  Fewer than two usable samples is a fail.
DecayCheck remainder_decay_check(const FitReport& report);

/// Agreement between the Laurent-pole route and the direct fit:
/// delta_a < 0.03 * leading and delta_c < 0.15 * max(1, |C_hat|).
CrossCheck cross_check_constants(const LaurentEstimate& lau, const FitReport& fit);

/// count log-uniform integers in [lo, hi], deduplicated, increasing.
std::vector<std::int64_t> log_spaced_samples(std::int64_t lo, std::int64_t hi, int count);

} // namespace legfact
