#include "legfact/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <regex>

#include "legfact/errors.hpp"

namespace legfact {

namespace {

std::int64_t mod_positive(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool squarefree(std::int64_t d) {
    std::int64_t n = std::llabs(d);
    if (n == 0) return false;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        std::int64_t e = 0;
        while (n % q == 0) {
            n /= q;
            if (++e >= 2) return false;
        }
    }
    return true;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // Deterministic Miller-Rabin for 64-bit with the standard base set.
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < r - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldSpec FieldSpec::rationals() {
    FieldSpec spec;
    spec.kind = FieldKind::Rationals;
    spec.d = 0;
    spec.discriminant = 1;
    spec.degree = 1;
    return spec;
}

FieldSpec FieldSpec::quadratic(std::int64_t d) {
    if (d == 0 || d == 1)
        throw config_error("quadratic field requires d != 0, 1");
    if (!squarefree(d))
        throw config_error("quadratic field requires squarefree d, got " + std::to_string(d));
    FieldSpec spec;
    spec.kind = FieldKind::Quadratic;
    spec.d = d;
    spec.discriminant = (mod_positive(d, 4) == 1) ? d : 4 * d;
    spec.degree = 2;
    return spec;
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "Q") return rationals();
    static const std::regex pattern(R"(^Q\(sqrt(-?\d+)\)$)");
    std::smatch match;
    if (std::regex_match(text, match, pattern)) {
        return quadratic(std::stoll(match[1].str()));
    }
    throw config_error("unrecognized field \"" + text + "\" (expected \"Q\" or \"Q(sqrt<d>)\")");
}

std::string FieldSpec::to_string() const {
    if (kind == FieldKind::Rationals) return "Q";
    return "Q(sqrt" + std::to_string(d) + ")";
}

const SEntry* SSet::find(std::int64_t p) const {
    for (const auto& entry : entries)
        if (entry.p == p) return &entry;
    return nullptr;
}

void SSet::validate(const FieldSpec& field) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = entries[i];
        if (!is_prime_u64(static_cast<std::uint64_t>(entry.p)))
            throw config_error("S-set entry " + std::to_string(entry.p) + " is not prime");
        for (std::size_t j = i + 1; j < entries.size(); ++j)
            if (entries[j].p == entry.p)
                throw config_error("duplicate S-set entry for p = " + std::to_string(entry.p));
        if (entry.which == SWhich::OneOfSplitPair &&
            splitting_type(field, entry.p) != SplittingType::Split)
            throw config_error("S-set entry " + std::to_string(entry.p) +
                               ":one requires a split prime in " + field.to_string());
    }
}

int kronecker_symbol(std::int64_t D, std::int64_t p) {
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw config_error("kronecker_symbol: p = " + std::to_string(p) + " is not prime");
    if (p == 2) {
        std::int64_t r = mod_positive(D, 8);
        if (r % 2 == 0) return 0;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    std::int64_t a = mod_positive(D, p);
    if (a == 0) return 0;
    // Euler's criterion; p is an odd prime.
    std::uint64_t t = powmod_u64(static_cast<std::uint64_t>(a),
                                 static_cast<std::uint64_t>((p - 1) / 2),
                                 static_cast<std::uint64_t>(p));
    return t == 1 ? 1 : -1;
}

SplittingType splitting_type(const FieldSpec& field, std::int64_t p) {
    if (field.kind == FieldKind::Rationals) return SplittingType::Rational;
    switch (kronecker_symbol(field.discriminant, p)) {
        case 0: return SplittingType::Ramified;
        case 1: return SplittingType::Split;
        default: return SplittingType::Inert;
    }
}

std::vector<std::int64_t> rational_primes(std::int64_t limit) {
    std::vector<std::int64_t> primes;
    if (limit < 2) return primes;
    primes.reserve(limit > 100 ? static_cast<std::size_t>(
                                     static_cast<double>(limit) / (std::log(double(limit)) - 1.1))
                               : 32);
    primes.push_back(2);

    // Small odd primes up to sqrt(limit), simple sieve.
    const std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    std::vector<char> small(static_cast<std::size_t>(root) + 1, 1);
    std::vector<std::int64_t> base; // odd primes <= root
    for (std::int64_t i = 3; i <= root; i += 2) {
        if (!small[static_cast<std::size_t>(i)]) continue;
        base.push_back(i);
        for (std::int64_t j = i * i; j <= root; j += 2 * i) small[static_cast<std::size_t>(j)] = 0;
    }

    // Odd-only segments of 2^20 candidates each (spans 2^21 integers).
    constexpr std::int64_t kSegmentOdds = std::int64_t(1) << 20;
    std::vector<char> segment(static_cast<std::size_t>(kSegmentOdds));
    for (std::int64_t low = 3; low <= limit; low += 2 * kSegmentOdds) {
        const std::int64_t high = std::min<std::int64_t>(low + 2 * kSegmentOdds - 2, limit);
        const std::int64_t count = (high - low) / 2 + 1;
        std::fill(segment.begin(), segment.begin() + count, 1);
        for (std::int64_t q : base) {
            if (q * q > high) break;
            std::int64_t start = std::max(q * q, ((low + q - 1) / q) * q);
            if (start % 2 == 0) start += q;
            for (std::int64_t j = start; j <= high; j += 2 * q)
                segment[static_cast<std::size_t>((j - low) / 2)] = 0;
        }
        for (std::int64_t i = 0; i < count; ++i)
            if (segment[static_cast<std::size_t>(i)]) primes.push_back(low + 2 * i);
    }
    return primes;
}

namespace {

PrimeIdeal make_ideal(std::int64_t p, int residue_degree, std::uint8_t pair_index) {
    PrimeIdeal ideal;
    ideal.p = p;
    ideal.residue_degree = residue_degree;
    ideal.pair_index = pair_index;
    ideal.norm = residue_degree == 1 ? p : p * p;
    ideal.log_norm = std::log(static_cast<double>(ideal.norm));
    return ideal;
}

} // namespace

std::vector<PrimeIdeal> prime_ideal_stream(const FieldSpec& field, const SSet& s,
                                           std::int64_t norm_bound) {
    if (norm_bound < 2) throw config_error("prime_ideal_stream: norm_bound must be >= 2");
    s.validate(field);

    std::vector<PrimeIdeal> stream;
    const std::vector<std::int64_t> primes = rational_primes(norm_bound);
    stream.reserve(primes.size() + 16);

    if (field.kind == FieldKind::Rationals) {
        for (std::int64_t p : primes) {
            const SEntry* entry = s.find(p);
            if (entry) continue; // AllAbove; OneOfSplitPair was rejected by validate
            stream.push_back(make_ideal(p, 1, 0));
        }
        return stream; // already nondecreasing in norm
    }

    for (std::int64_t p : primes) {
        const SEntry* entry = s.find(p);
        const SplittingType type = splitting_type(field, p);
        switch (type) {
            case SplittingType::Split:
                if (entry && entry->which == SWhich::AllAbove) break;
                stream.push_back(make_ideal(p, 1, 0));
                // OneOfSplitPair keeps the first member only.
                if (!entry) stream.push_back(make_ideal(p, 1, 1));
                break;
            case SplittingType::Ramified:
                if (!entry) stream.push_back(make_ideal(p, 1, 0));
                break;
            case SplittingType::Inert:
                if (!entry && p <= norm_bound / p) stream.push_back(make_ideal(p, 2, 0));
                break;
            case SplittingType::Rational:
                break; // unreachable for quadratic fields
        }
    }

    std::sort(stream.begin(), stream.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        if (a.p != b.p) return a.p < b.p;
        return a.pair_index < b.pair_index;
    });
    return stream;
}

} // namespace legfact
