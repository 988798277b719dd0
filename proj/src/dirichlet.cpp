#include "legfact/dirichlet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "legfact/errors.hpp"
#include "legfact/numerics.hpp"

namespace legfact {

namespace {

using Cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Euler-Maclaurin zeta.
//
//   zeta(s) = sum_{n<=M} n^{-s} + M^{1-s}/(s-1) - M^{-s}/2
//           + s M^{-s-1}/12 - s(s+1)(s+2) M^{-s-3}/720 + ...
//
// The first omitted term (B6) is s(s+1)(s+2)(s+3)(s+4) M^{-s-5}/30240.
// ---------------------------------------------------------------------------

double zeta_em_first_omitted(double s, double M) {
    return std::abs(s * (s + 1) * (s + 2) * (s + 3) * (s + 4)) * std::pow(M, -s - 5) / 30240.0;
}

const double* log_table(std::int64_t upto) {
    static thread_local std::vector<double> logs{0.0, 0.0}; // logs[n] = log n
    while (static_cast<std::int64_t>(logs.size()) <= upto)
        logs.push_back(std::log(static_cast<double>(logs.size())));
    return logs.data();
}

Cplx zeta_complex(Cplx s) {
    const double scale = std::max(1.0, 1.0 / std::abs(s - 1.0));
    std::int64_t M = std::max<std::int64_t>(32, static_cast<std::int64_t>(2.0 * std::abs(s.imag())));
    while (M < (1 << 22)) {
        const double omitted = std::abs(s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0)) *
                               std::pow(static_cast<double>(M), -s.real() - 5.0) / 30240.0;
        if (omitted < 1e-12 * scale) break;
        M *= 2;
    }
    const double* logs = log_table(M);
    Cplx sum = 0.0;
    for (std::int64_t n = 1; n <= M; ++n) sum += std::exp(-s * logs[n]);
    const double Md = static_cast<double>(M);
    const Cplx Ms = std::exp(-s * std::log(Md)); // M^{-s}
    sum += Ms * Md / (s - 1.0);
    sum -= 0.5 * Ms;
    sum += s * Ms / (12.0 * Md);
    sum -= s * (s + 1.0) * (s + 2.0) * Ms / (720.0 * Md * Md * Md);
    return sum;
}

std::int64_t checked_f_value(const FSpec& f, const PrimeIdeal& ideal) {
    return f.value_at(ideal);
}

// Partial sum of H over a prebuilt stream.  For f(P) = N(P) the term equals
// the log-derivative term bit for bit, which makes J vanish exactly in that
// case.
double h_partial_over(const std::vector<PrimeIdeal>& stream, double s, const FSpec& f) {
    CompensatedSum sum;
    for (const PrimeIdeal& ideal : stream) {
        const double q = std::exp(-s * ideal.log_norm);
        const double lf = std::log(static_cast<double>(checked_f_value(f, ideal)));
        sum.add(ideal.log_norm * std::exp(-s * lf) / (1.0 - q));
    }
    return sum.value();
}

double log_deriv_partial_over(const std::vector<PrimeIdeal>& stream, double s) {
    CompensatedSum sum;
    for (const PrimeIdeal& ideal : stream) {
        const double q = std::exp(-s * ideal.log_norm);
        sum.add(ideal.log_norm * q / (1.0 - q));
    }
    return sum.value();
}

// Counting bound for the reported tail: at most `degree` ideals above each
// rational prime, integral comparison for the prime sum, and a fluctuation
// allowance of (1 + 1/log P).
double h_tail_bound(double s, std::int64_t P, double c, int degree) {
    const double Pd = static_cast<double>(P);
    return degree * std::pow(c, -s) * std::pow(Pd, 1.0 - s) / (s - 1.0) *
           (1.0 + 1.0 / std::log(Pd)) * (1.0 + std::pow(Pd, -s));
}

// Heuristic uncertainty of the tail reconstruction: fluctuation of the
// log-weighted ideal count around t on the scale sqrt(t) log^2 t / (8 pi),
// integrated against t^{-s}.
double h_tail_uncertainty(double s, std::int64_t P, double c) {
    const double Pd = static_cast<double>(P);
    const double lp = std::log(Pd);
    const double fluct = std::sqrt(Pd) * lp * lp / (8.0 * kPi);
    return std::pow(c, -s) * fluct * std::pow(Pd, -s) * (1.0 + s / (s - 0.5));
}

void require_s_gt_1(double s, const char* where) {
    if (!(s > 1.0)) throw std::domain_error(std::string(where) + " requires s > 1");
}

// Symmetric 3x3 Jacobi eigenvalue sweep; returns |lmax|/|lmin|.
double condition_sym3(std::array<std::array<long double, 3>, 3> m) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        long double off = std::abs(m[0][1]) + std::abs(m[0][2]) + std::abs(m[1][2]);
        if (off < 1e-30L) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(m[p][q]) < 1e-36L) continue;
                const long double theta = (m[q][q] - m[p][p]) / (2.0L * m[p][q]);
                const long double t =
                    (theta >= 0 ? 1.0L : -1.0L) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0L));
                const long double cth = 1.0L / std::sqrt(t * t + 1.0L);
                const long double sth = t * cth;
                for (int k = 0; k < 3; ++k) {
                    const long double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = cth * mkp - sth * mkq;
                    m[k][q] = sth * mkp + cth * mkq;
                }
                for (int k = 0; k < 3; ++k) {
                    const long double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = cth * mpk - sth * mqk;
                    m[q][k] = sth * mpk + cth * mqk;
                }
            }
    }
    long double lo = std::abs(m[0][0]), hi = lo;
    for (int k = 1; k < 3; ++k) {
        lo = std::min(lo, std::abs(m[k][k]));
        hi = std::max(hi, std::abs(m[k][k]));
    }
    if (lo == 0.0L) return std::numeric_limits<double>::infinity();
    return static_cast<double>(hi / lo);
}

} // namespace

double zeta_real(double s) {
    require_s_gt_1(s, "zeta_real");
    const double scale = std::max(1.0, 1.0 / (s - 1.0));
    std::int64_t M = 16;
    while (M < (1 << 24) && zeta_em_first_omitted(s, static_cast<double>(M)) >= 1e-13 * scale)
        M *= 2;

    CompensatedSum sum;
    for (std::int64_t n = 1; n <= M; ++n) sum.add(std::pow(static_cast<double>(n), -s));
    const double Md = static_cast<double>(M);
    const double Ms = std::pow(Md, -s);
    sum.add(Ms * Md / (s - 1.0));
    sum.add(-0.5 * Ms);
    sum.add(s * Ms / (12.0 * Md));
    sum.add(-s * (s + 1.0) * (s + 2.0) * Ms / (720.0 * Md * Md * Md));
    return sum.value();
}

SeriesPoint dirichlet_partial(double s, std::int64_t N, const IncrementTable& table) {
    require_s_gt_1(s, "dirichlet_partial");
    if (N < 1 || N > table.x_max)
        throw config_error("dirichlet_partial: N must lie in [1, x_max]");

    CompensatedSum sum;
    for (std::int64_t n = 1; n <= N; ++n)
        sum.add(table.values[static_cast<std::size_t>(n)] * std::pow(static_cast<double>(n), -s));

    // Envelope for B(n) beyond N: (1/c) log t plus the largest observed excess
    // ratio on [N/2, N].
    double k0 = 0.0;
    for (std::int64_t n = std::max<std::int64_t>(2, N / 2); n <= N; ++n) {
        const double b = table.values[static_cast<std::size_t>(n)];
        if (b > 0.0)
            k0 = std::max(k0, b * table.c / std::log(static_cast<double>(n)));
    }
    const double Nd = static_cast<double>(N);
    const double Npow = std::pow(Nd, 1.0 - s);
    const double i_log = Npow * (std::log(Nd) / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)));
    const double i_one = Npow / (s - 1.0);

    SeriesPoint pt;
    pt.s = s;
    pt.value = sum.value();
    pt.truncation = N;
    pt.tail_bound = i_log / table.c + k0 * i_one;
    return pt;
}

double h_tail_estimate(double s, std::int64_t P, double c) {
    return std::pow(c, -s) * std::pow(static_cast<double>(P), 1.0 - s) / (s - 1.0);
}

SeriesPoint h_truncated(double s, std::int64_t P, const FieldSpec& field, const SSet& ss,
                        const FSpec& f) {
    require_s_gt_1(s, "h_truncated");
    if (P < 2) throw config_error("h_truncated requires P >= 2");
    f.validate();
    const std::vector<PrimeIdeal> stream = prime_ideal_stream(field, ss, P);

    SeriesPoint pt;
    pt.s = s;
    pt.value = h_partial_over(stream, s, f);
    pt.truncation = P;
    pt.tail_bound = h_tail_bound(s, P, f.c, field.degree);
    return pt;
}

SeriesPoint log_deriv_zetaKS(double s, std::int64_t P, const FieldSpec& field,
                             const SSet& ss) {
    require_s_gt_1(s, "log_deriv_zetaKS");
    if (P < 2) throw config_error("log_deriv_zetaKS requires P >= 2");
    const std::vector<PrimeIdeal> stream = prime_ideal_stream(field, ss, P);

    SeriesPoint pt;
    pt.s = s;
    pt.value = log_deriv_partial_over(stream, s);
    pt.truncation = P;
    pt.tail_bound = h_tail_bound(s, P, 1.0, field.degree);
    return pt;
}

SeriesPoint j_estimate(double s, std::int64_t P, const FieldSpec& field, const SSet& ss,
                       const FSpec& f) {
    const SeriesPoint h = h_truncated(s, P, field, ss, f);
    const SeriesPoint ld = log_deriv_zetaKS(s, P, field, ss);
    const double cs = std::pow(f.c, -s);

    SeriesPoint pt;
    pt.s = s;
    pt.value = h.value - cs * ld.value;
    pt.truncation = P;
    pt.tail_bound = h.tail_bound + cs * ld.tail_bound;
    return pt;
}

SeriesPoint zeta_times_h(double s, std::int64_t P, const FieldSpec& field, const SSet& ss,
                         const FSpec& f) {
    const double z = zeta_real(s);
    const SeriesPoint h = h_truncated(s, P, field, ss, f);

    SeriesPoint pt;
    pt.s = s;
    pt.value = z * h.value;
    pt.truncation = P;
    pt.tail_bound = z * h.tail_bound;
    return pt;
}

LaurentEstimate laurent_extract(const FieldSpec& field, const SSet& ss, const FSpec& f,
                                const std::vector<double>& epsilons, std::int64_t P) {
    f.validate();
    if (epsilons.size() < 3)
        throw config_error("laurent_extract needs at least 3 epsilon samples");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] >= 1e-3 * (1.0 - 1e-9)))
            throw config_error("laurent_extract: epsilons must be >= 1e-3");
        if (!(epsilons[i] < 1.0))
            throw config_error("laurent_extract: epsilons must be < 1");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
            throw config_error("laurent_extract: epsilons must be strictly decreasing");
    }
    if (P < 2) throw config_error("laurent_extract requires P >= 2");

    const std::vector<PrimeIdeal> stream = prime_ideal_stream(field, ss, P);

    std::vector<double> g(epsilons.size());
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const double eps = epsilons[i];
        const double s = 1.0 + eps;
        const double corrected = h_partial_over(stream, s, f) + h_tail_estimate(s, P, f.c);
        const double d = zeta_real(s) * corrected;
        g[i] = eps * eps * d;

        const double uncertainty = zeta_real(s) * h_tail_uncertainty(s, P, f.c) * eps * eps;
        if (!(uncertainty < 1e-3 * std::abs(g[i])))
            throw numeric_error("laurent_extract: P = " + std::to_string(P) +
                                " too small for epsilon = " + std::to_string(eps));
    }

    // Least squares for g(eps) = L0 + L1 eps + L2 eps^2.
    std::array<std::array<long double, 3>, 3> m{};
    std::array<long double, 3> rhs{};
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const long double e = epsilons[i];
        const std::array<long double, 3> row{1.0L, e, e * e};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) m[a][b] += row[a] * row[b];
            rhs[a] += row[a] * static_cast<long double>(g[i]);
        }
    }
    const double condition = condition_sym3(m);
    if (!(condition < 1e8))
        throw numeric_error("laurent_extract: fit condition " + std::to_string(condition) +
                            " exceeds 1e8");

    // 3x3 Gaussian elimination with partial pivoting.
    std::array<std::array<long double, 4>, 3> aug{};
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) aug[a][b] = m[a][b];
        aug[a][3] = rhs[a];
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
        std::swap(aug[col], aug[pivot]);
        for (int r = col + 1; r < 3; ++r) {
            const long double factor = aug[r][col] / aug[col][col];
            for (int b = col; b < 4; ++b) aug[r][b] -= factor * aug[col][b];
        }
    }
    std::array<long double, 3> sol{};
    for (int r = 2; r >= 0; --r) {
        long double acc = aug[r][3];
        for (int b = r + 1; b < 3; ++b) acc -= aug[r][b] * sol[b];
        sol[r] = acc / aug[r][r];
    }

    LaurentEstimate est;
    est.leading = static_cast<double>(sol[0]);
    est.subleading = static_cast<double>(sol[1]);
    est.epsilons = epsilons;
    est.condition = condition;
    return est;
}

namespace {

struct PerronIntegrand {
    double b = 0.0;
    double log_x = 0.0;
    double log_c = 0.0;
    double log_P = 0.0;
    std::vector<double> log_norms;
    std::vector<double> log_fs;

    double operator()(double t) const {
        const Cplx s(b, t);
        Cplx h = 0.0;
        for (std::size_t i = 0; i < log_norms.size(); ++i) {
            const Cplx q = std::exp(-s * log_norms[i]);
            h += log_norms[i] * std::exp(-s * log_fs[i]) / (1.0 - q);
        }
        // Tail of H beyond P, integral-comparison estimate on the line.
        h += std::exp(-s * log_c) * std::exp((1.0 - s) * log_P) / (s - 1.0);
        const Cplx d = zeta_complex(s) * h;
        return (d * std::exp(s * log_x) / s).real();
    }
};

struct SimpsonWorker {
    const PerronIntegrand& f;
    int max_depth;

    double recurse(double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
        if (depth >= max_depth)
            throw numeric_error("perron_estimate: quadrature did not converge on [" +
                                std::to_string(a) + ", " + std::to_string(b) + "]");
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }

    double integrate(double a, double b, double tol) const {
        const double m = 0.5 * (a + b);
        const double fa = f(a), fm = f(m), fb = f(b);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return recurse(a, b, fa, fm, fb, whole, tol, 0);
    }
};

} // namespace

double perron_estimate(double x, double T, const FieldSpec& field, const SSet& ss,
                       const FSpec& f, std::int64_t P) {
    if (!(x >= 2.0))
        throw config_error("perron_estimate requires x >= 2");
    if (!(x - std::floor(x) >= 0.25))
        throw config_error("perron_estimate requires x at least 0.25 above an integer");
    if (!(T >= 2.0))
        throw config_error("perron_estimate requires T >= 2");
    if (P < 2) throw config_error("perron_estimate requires P >= 2");
    f.validate();

    PerronIntegrand integrand;
    integrand.b = 1.0 + 1.0 / std::log(x);
    integrand.log_x = std::log(x);
    integrand.log_c = std::log(f.c);
    integrand.log_P = std::log(static_cast<double>(P));
    for (const PrimeIdeal& ideal : prime_ideal_stream(field, ss, P)) {
        integrand.log_norms.push_back(ideal.log_norm);
        integrand.log_fs.push_back(std::log(static_cast<double>(f.value_at(ideal))));
    }

    // Panel layout: geometric growth away from the peak at t = 0, then capped
    // at a few oscillation periods of x^{it} so Simpson never straddles whole
    // cycles undetected.
    const double period = 2.0 * kPi / std::log(x);
    const double cap = 4.0 * period;
    std::vector<double> breaks{0.0};
    double width = 0.5 * (integrand.b - 1.0);
    while (breaks.back() < T) {
        breaks.push_back(std::min(T, breaks.back() + std::min(width, cap)));
        width *= 2.0;
        if (width > cap) width = cap;
    }

    const double peak = std::abs(integrand(0.0));
    const double tol_total = 1e-7 * std::max(1.0, peak);
    const SimpsonWorker worker{integrand, 26};

    // The integrand is even in t, so integrate [0, T] and use
    // (1/2pi) * 2 = 1/pi.
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double len = breaks[i + 1] - breaks[i];
        total += worker.integrate(breaks[i], breaks[i + 1],
                                  tol_total * std::max(len / T, 1e-4));
    }
    return total / kPi;
}

} // namespace legfact
