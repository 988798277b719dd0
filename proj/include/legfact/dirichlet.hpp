#pragma once

#include <cstdint>
#include <vector>

#include "legfact/factorial.hpp"
#include "legfact/number_field.hpp"

namespace legfact {

/// One evaluation of a truncated series:  value is the partial sum itself,
/// tail_bound a heuristic (integral-comparison) estimate of what was cut off.
/// Tail bounds are reported, not certified.
struct SeriesPoint {
    double s = 0.0;
    double value = 0.0;
    std::int64_t truncation = 1; // N or P used
    double tail_bound = 0.0;
};

/// Laurent data of D(s) at s = 1 recovered from the right of the pole:
/// leading estimates the (s-1)^{-2} coefficient (= 1/c), subleading the
/// (s-1)^{-1} coefficient.
struct LaurentEstimate {
    double leading = 0.0;
    double subleading = 0.0;
    std::vector<double> epsilons;
    double condition = 0.0; // condition number of the fit normal matrix
};

/// Partial sum of sum_{n<=N} B(n) / n^s from a precomputed table.
SeriesPoint dirichlet_partial(double s, std::int64_t N, const IncrementTable& table);

/// H(s) truncated at norm P:  sum over N(P) <= P of
/// log N(P) / (f(P)^s (1 - N(P)^{-s})).
SeriesPoint h_truncated(double s, std::int64_t P, const FieldSpec& field, const SSet& ss,
                        const FSpec& f);

/// Integral-comparison estimate of the tail of H beyond norm P, using
/// f(P) ~ c N(P) and the prime-ideal theorem density:  c^{-s} P^{1-s}/(s-1).
/// Sharp in expectation; used to reconstruct H(s) near s = 1 where no feasible
/// truncation height reaches the pole.
double h_tail_estimate(double s, std::int64_t P, double c);

/// Riemann zeta on the real axis right of 1, Euler-Maclaurin with Bernoulli
/// corrections through B4, cutoff chosen so the first omitted term is below
/// 1e-13 * |zeta(s)|.
double zeta_real(double s);

/// Truncated -zeta_K'/zeta_K with the S Euler factors removed:
/// sum over N(P) <= P, P not in S, of log N(P) / (N(P)^s - 1).
SeriesPoint log_deriv_zetaKS(double s, std::int64_t P, const FieldSpec& field,
                             const SSet& ss);

/// J(s) = H(s) - c^{-s} (-zeta_K'/zeta_K)_S(s), both truncated at P.
/// The two tails cancel term-by-term to first order; the reported bound is the
/// conservative sum of the component bounds.
SeriesPoint j_estimate(double s, std::int64_t P, const FieldSpec& field, const SSet& ss,
                       const FSpec& f);

/// zeta(s) * h_truncated(s, P): the factored evaluation of D(s).
SeriesPoint zeta_times_h(double s, std::int64_t P, const FieldSpec& field, const SSet& ss,
                         const FSpec& f);

/// Fit eps^2 * D(1+eps) = L0 + L1 eps + L2 eps^2 over the epsilon schedule,
/// with D evaluated as zeta * (H partial + tail estimate).  Returns L0
/// (estimates 1/c) and L1.  epsilons must be positive, strictly decreasing,
/// and >= 1e-3; P must be large enough that the heuristic uncertainty of the
/// tail reconstruction stays under 1e-3 of the value at the smallest epsilon.
LaurentEstimate laurent_extract(const FieldSpec& field, const SSet& ss, const FSpec& f,
                                const std::vector<double>& epsilons, std::int64_t P);

/// Truncated Perron integral
///   (1/2pi) int_{-T}^{T} Re[ D(b+it) x^{b+it} / (b+it) ] dt,  b = 1 + 1/log x,
/// with D = zeta * (H partial + tail estimate) on the line.  Adaptive Simpson
/// quadrature with panel refinement near t = 0.  Requires x >= 2, x at least
/// 0.25 away from the integer below it, T >= 2.
double perron_estimate(double x, double T, const FieldSpec& field, const SSet& ss,
                       const FSpec& f, std::int64_t P);

} // namespace legfact
