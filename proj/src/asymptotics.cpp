#include "legfact/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "legfact/errors.hpp"

namespace legfact {

std::vector<std::int64_t> log_spaced_samples(std::int64_t lo, std::int64_t hi, int count) {
    if (lo < 1 || hi < lo || count < 1)
        throw config_error("log_spaced_samples: need 1 <= lo <= hi and count >= 1");
    std::vector<std::int64_t> xs;
    xs.reserve(static_cast<std::size_t>(count));
    const double llo = std::log(static_cast<double>(lo));
    const double lhi = std::log(static_cast<double>(hi));
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 1.0 : static_cast<double>(i) / (count - 1);
        const std::int64_t x =
            static_cast<std::int64_t>(std::llround(std::exp(llo + t * (lhi - llo))));
        if (xs.empty() || x > xs.back()) xs.push_back(std::min(x, hi));
    }
    if (xs.back() != hi) xs.push_back(hi);
    return xs;
}

FitReport fit_main_terms(const IncrementTable& table,
                         const std::vector<std::int64_t>& sample_xs) {
    if (sample_xs.size() < 2)
        throw fit_error("fit_main_terms: fewer than 2 samples");
    for (std::size_t i = 0; i < sample_xs.size(); ++i) {
        if (sample_xs[i] < 100)
            throw fit_error("fit_main_terms: samples must be >= 100");
        if (sample_xs[i] > table.x_max)
            throw fit_error("fit_main_terms: sample beyond table x_max");
        if (i > 0 && sample_xs[i] <= sample_xs[i - 1])
            throw fit_error("fit_main_terms: samples must be strictly increasing");
    }
    if (sample_xs.size() < 8)
        throw fit_error("fit_main_terms: need at least 8 samples");
    if (sample_xs.back() < 100 * sample_xs.front())
        throw fit_error("fit_main_terms: samples must span at least two decades");

    // Weighted least squares, weight 1/x, basis {x log x, x}.
    long double suu = 0, suv = 0, svv = 0, suy = 0, svy = 0;
    for (std::int64_t x : sample_xs) {
        const long double xd = static_cast<long double>(x);
        const long double w = 1.0L / xd;
        const long double u = xd * std::log(xd);
        const long double v = xd;
        const long double y = table.prefix[static_cast<std::size_t>(x)];
        suu += w * u * u;
        suv += w * u * v;
        svv += w * v * v;
        suy += w * u * y;
        svy += w * v * y;
    }
    const long double det = suu * svv - suv * suv;
    if (!(std::abs(det) > 0))
        throw fit_error("fit_main_terms: rank-deficient design");
    const long double a_hat = (svv * suy - suv * svy) / det;
    const long double c_hat = (suu * svy - suv * suy) / det;

    FitReport report;
    report.a_hat = static_cast<double>(a_hat);
    report.C_hat = static_cast<double>(c_hat);
    report.a_theory = 1.0 / table.c;
    report.sample_xs = sample_xs;

    // Pinned fit: a fixed at 1/c, refit the x coefficient alone, then profile
    // the remainder against that model.
    long double pin_num = 0, pin_den = 0;
    for (std::int64_t x : sample_xs) {
        const long double xd = static_cast<long double>(x);
        const long double y = table.prefix[static_cast<std::size_t>(x)];
        pin_num += y - report.a_theory * xd * std::log(xd);
        pin_den += xd;
    }
    const long double c_pinned = pin_num / pin_den;

    double max_rel = 0.0;
    for (std::int64_t x : sample_xs) {
        const double xd = static_cast<double>(x);
        const double y = table.prefix[static_cast<std::size_t>(x)];
        const double fit_res = y - report.a_hat * xd * std::log(xd) - report.C_hat * xd;
        max_rel = std::max(max_rel, std::abs(fit_res) / xd);
        const double r =
            y - report.a_theory * xd * std::log(xd) - static_cast<double>(c_pinned) * xd;
        report.remainder_profile.emplace_back(xd, r / xd);
    }
    report.residual_max_rel = max_rel;
    return report;
}

DecayCheck remainder_decay_check(const FitReport& report) {
    DecayCheck check;
    if (report.remainder_profile.empty()) {
        check.message = "empty remainder profile";
        return check;
    }

    // Keep samples above the accumulation noise floor.
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [x, r] : report.remainder_profile) {
        if (!(std::abs(r) > 10.0 * std::numeric_limits<double>::epsilon() * std::log(x)))
            continue;
        const long double u = std::sqrt(std::log(x));
        const long double v = std::log(std::abs(r));
        sx += u;
        sy += v;
        sxx += u * u;
        sxy += u * v;
        ++n;
    }
    check.samples_used = n;
    if (n < 2) {
        check.passed = false;
        check.message = "fewer than 2 samples above the noise floor";
        return check;
    }
    const long double det = n * sxx - sx * sx;
    if (!(std::abs(det) > 0)) {
        check.passed = false;
        check.message = "degenerate abscissae";
        return check;
    }
    check.slope = static_cast<double>((n * sxy - sx * sy) / det);
    check.passed = check.slope < 0.0;
    check.message = check.passed ? "remainder decays" : "remainder does not decay";
    return check;
}

CrossCheck cross_check_constants(const LaurentEstimate& lau, const FitReport& fit) {
    CrossCheck check;
    check.delta_a = std::abs(lau.leading - fit.a_hat);
    check.delta_c = std::abs((lau.subleading - lau.leading) - fit.C_hat);
    check.a_ok = check.delta_a < 0.03 * lau.leading;
    check.c_ok = check.delta_c < 0.15 * std::max(1.0, std::abs(fit.C_hat));
    return check;
}

} // namespace legfact
