#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace legfact {

enum class FieldKind { Rationals, Quadratic };

/// Base field: Q, or the quadratic field Q(sqrt(d)) for a squarefree
/// integer d != 0, 1.  Only fundamental discriminants are constructed:
/// disc = d when d = 1 (mod 4), else 4d.
struct FieldSpec {
    FieldKind kind = FieldKind::Rationals;
    std::int64_t d = 0;            // defining squarefree integer (Quadratic only)
    std::int64_t discriminant = 1; // 1 for Q
    int degree = 1;

    static FieldSpec rationals();
    static FieldSpec quadratic(std::int64_t d); // throws config_error on bad d
    /// Accepts "Q" or "Q(sqrt<d>)" with d a signed integer, e.g. "Q(sqrt-1)".
    static FieldSpec parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const FieldSpec&) const = default;
};

/// A prime ideal, identified by the rational prime under it.  The two members
/// of a split pair are told apart by pair_index only; every quantity computed
/// downstream depends on the ideal solely through its norm.
struct PrimeIdeal {
    std::int64_t p = 0;
    int residue_degree = 1;     // 1 or 2
    std::uint8_t pair_index = 0; // 1 on the second ideal of a split pair
    std::int64_t norm = 0;      // p^residue_degree, exact
    double log_norm = 0.0;      // log(norm)
};

enum class SWhich { AllAbove, OneOfSplitPair };

struct SEntry {
    std::int64_t p = 0;
    SWhich which = SWhich::AllAbove;
};

/// Finite exclusion set of prime ideals, keyed by rational prime.
struct SSet {
    std::vector<SEntry> entries;

    static SSet empty() { return {}; }
    const SEntry* find(std::int64_t p) const;
    /// Entries must be distinct by p; OneOfSplitPair requires p split in field.
    void validate(const FieldSpec& field) const;
};

enum class SplittingType { Split, Inert, Ramified, Rational };

/// Kronecker symbol (D|p) for a fundamental discriminant (or 1) and prime p.
/// p = 2 convention: 0 if D even, +1 if D = +-1 (mod 8), -1 if D = +-3 (mod 8).
/// Throws config_error when p is not prime.
int kronecker_symbol(std::int64_t D, std::int64_t p);

SplittingType splitting_type(const FieldSpec& field, std::int64_t p);

/// All primes <= limit, increasing.  Segmented odd-only sieve; bounded memory
/// up to limit 1e8.
std::vector<std::int64_t> rational_primes(std::int64_t limit);

/// Every prime ideal of the field with norm <= norm_bound and not excluded by
/// s, in nondecreasing norm order (ties by (p, pair_index)).  Split primes not
/// in s contribute two identical-norm entries.
std::vector<PrimeIdeal> prime_ideal_stream(const FieldSpec& field, const SSet& s,
                                           std::int64_t norm_bound);

bool is_prime_u64(std::uint64_t n);

} // namespace legfact
