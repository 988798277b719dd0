#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "legfact/number_field.hpp"

namespace legfact {

enum class FShape { ExactNorm, NormMinusOne, Table };

/// Weight function f on prime ideals.
///   ExactNorm:    f(P) = max(1, round(c * N(P)))
///   NormMinusOne: f(P) = max(1, round(c * N(P)) - 1)
///   Table:        per-ideal overrides keyed by (p, pair_index), falling back
///                 to ExactNorm.
/// Rounding is half-to-even.
struct FSpec {
    double c = 1.0;
    FShape shape = FShape::ExactNorm;
    std::map<std::pair<std::int64_t, int>, std::int64_t> overrides;
    std::optional<double> delta_hint; // documentation only

    std::int64_t value_at(const PrimeIdeal& ideal) const;
    void validate() const; // throws config_error

    static FSpec exact_norm(double c = 1.0);
    static FSpec norm_minus_one(double c = 1.0);
    /// Grammar: "norm" | "norm-1" | "c*norm:<real>" | "table:<path>".
    static FSpec parse(const std::string& text);
};

struct ExponentEntry {
    PrimeIdeal ideal;
    std::int64_t exponent = 0; // >= 1 in stored entries
};

/// Finite sparse exponent map representing a factorial ideal.  Entries are
/// sorted by (norm, p, pair_index); zero exponents are absent.
struct ExponentIdeal {
    std::vector<ExponentEntry> entries;
};

/// Table of increments B(n) and their prefix sums S(n) for n = 1..x_max.
/// Index 0 of both arrays is unused.  `c` records the scale constant of the
/// weight function the table was built from (used by tail heuristics).
struct IncrementTable {
    std::int64_t x_max = 0;
    std::vector<double> values; // values[n] = B(n)
    std::vector<double> prefix; // prefix[n] = S(n), compensated accumulation
    double c = 1.0;
};

/// Hard cap on table size (entries).
inline constexpr std::int64_t kTableEntryCap = 20'000'000;

/// Valuation sum_{k>=0} floor(n / (f(P) * N(P)^k)) in exact integer
/// arithmetic; terminates before any intermediate product can overflow.
std::int64_t valuation(std::int64_t n, const PrimeIdeal& ideal, const FSpec& f);

/// The exponent map P -> valuation(n, P, f) restricted to nonzero values.
ExponentIdeal factorial_ideal(std::int64_t n, const FieldSpec& field, const SSet& s,
                              const FSpec& f);

/// B(n) = sum over ideals not in s of log N(P) * #{k >= 0 : f(P) N(P)^k | n}.
double increment(std::int64_t n, const FieldSpec& field, const SSet& s, const FSpec& f);

/// Sieve all increments for n <= x plus compensated prefix sums.  The default
/// single-threaded mode is bit-reproducible; the block-partitioned parallel
/// mode produces the same per-cell addition order and therefore the same
/// values array for any thread count.
IncrementTable increments_upto(std::int64_t x, const FieldSpec& field, const SSet& s,
                               const FSpec& f, int threads = 1);

/// S(x) = prefix[floor(x)].  Throws on x < 1 or floor(x) > x_max.
double summatory(double x, const IncrementTable& table);

/// log of the absolute norm of the ideal: sum of exponent * log_norm.
double log_norm_of_ideal(const ExponentIdeal& ideal);

/// Prime ideals with f(P) <= n (the support bound for everything above),
/// in nondecreasing norm order.  Includes table-override ideals whose norm
/// exceeds the generic bound.
std::vector<PrimeIdeal> ideals_with_f_upto(std::int64_t n, const FieldSpec& field,
                                           const SSet& s, const FSpec& f);

} // namespace legfact
