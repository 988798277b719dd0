#include "legfact/factorial.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "legfact/errors.hpp"
#include "legfact/numerics.hpp"

namespace legfact {

namespace {

// round(c * norm), half to even.  nearbyint honors the default FE_TONEAREST
// rounding mode, which is exactly round-half-to-even.
std::int64_t rounded_scale(double c, std::int64_t norm) {
    const double scaled = std::nearbyint(c * static_cast<double>(norm));
    return static_cast<std::int64_t>(scaled);
}

bool sorted_before(const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    if (a.p != b.p) return a.p < b.p;
    return a.pair_index < b.pair_index;
}

} // namespace

FSpec FSpec::exact_norm(double c) {
    FSpec f;
    f.c = c;
    f.shape = FShape::ExactNorm;
    f.validate();
    return f;
}

FSpec FSpec::norm_minus_one(double c) {
    FSpec f;
    f.c = c;
    f.shape = FShape::NormMinusOne;
    f.validate();
    return f;
}

void FSpec::validate() const {
    if (!(c > 0.0))
        throw config_error("f-spec requires scale c > 0");
    if (c > 1e6)
        throw config_error("f-spec scale c > 1e6 is not supported");
    for (const auto& [key, value] : overrides) {
        if (value < 1)
            throw config_error("f-spec override for p = " + std::to_string(key.first) +
                               " must be >= 1");
        if (key.second != 0 && key.second != 1)
            throw config_error("f-spec override pair index must be 0 or 1");
    }
    if (delta_hint && !(*delta_hint > 0.0))
        throw config_error("f-spec delta hint must be positive");
}

std::int64_t FSpec::value_at(const PrimeIdeal& ideal) const {
    if (shape == FShape::Table) {
        auto it = overrides.find({ideal.p, ideal.pair_index});
        if (it != overrides.end()) return it->second;
        return std::max<std::int64_t>(1, rounded_scale(c, ideal.norm));
    }
    std::int64_t base = rounded_scale(c, ideal.norm);
    if (shape == FShape::NormMinusOne) base -= 1;
    return std::max<std::int64_t>(1, base);
}

std::int64_t valuation(std::int64_t n, const PrimeIdeal& ideal, const FSpec& f) {
    if (n < 1) throw config_error("valuation requires n >= 1");
    const std::int64_t fp = f.value_at(ideal);
    std::int64_t total = 0;
    std::int64_t modulus = fp;
    while (modulus <= n) {
        total += n / modulus;
        if (modulus > n / ideal.norm) break; // next power would exceed n
        modulus *= ideal.norm;
    }
    return total;
}

std::vector<PrimeIdeal> ideals_with_f_upto(std::int64_t n, const FieldSpec& field,
                                           const SSet& s, const FSpec& f) {
    f.validate();
    s.validate(field);

    // Generic bound: f(P) <= n forces N(P) <= (n + 2)/c for both built-in
    // shapes (rounding slack included).
    const double raw_bound = (static_cast<double>(n) + 2.0) / f.c;
    const std::int64_t base_bound =
        std::max<std::int64_t>(2, static_cast<std::int64_t>(raw_bound) + 1);

    std::vector<PrimeIdeal> out;
    for (const PrimeIdeal& ideal : prime_ideal_stream(field, s, base_bound))
        if (f.value_at(ideal) <= n) out.push_back(ideal);

    // Table overrides can give small f to ideals of arbitrarily large norm.
    if (f.shape == FShape::Table) {
        for (const auto& [key, value] : f.overrides) {
            const auto [p, pair] = key;
            if (value > n) continue;
            if (!is_prime_u64(static_cast<std::uint64_t>(p)))
                throw config_error("f-spec override p = " + std::to_string(p) + " is not prime");
            const SplittingType type = splitting_type(field, p);
            if (pair == 1 && type != SplittingType::Split)
                throw config_error("f-spec override (" + std::to_string(p) +
                                   ", 1) requires a split prime");
            PrimeIdeal ideal;
            ideal.p = p;
            ideal.residue_degree = (type == SplittingType::Inert) ? 2 : 1;
            ideal.pair_index = static_cast<std::uint8_t>(pair);
            ideal.norm = ideal.residue_degree == 1 ? p : p * p;
            ideal.log_norm = std::log(static_cast<double>(ideal.norm));
            if (ideal.norm <= base_bound) continue; // already in the stream
            const SEntry* entry = s.find(p);
            if (entry && (entry->which == SWhich::AllAbove || pair == 1)) continue;
            out.push_back(ideal);
        }
        std::sort(out.begin(), out.end(), sorted_before);
    }
    return out;
}

ExponentIdeal factorial_ideal(std::int64_t n, const FieldSpec& field, const SSet& s,
                              const FSpec& f) {
    if (n < 1) throw config_error("factorial_ideal requires n >= 1");
    ExponentIdeal result;
    for (const PrimeIdeal& ideal : ideals_with_f_upto(n, field, s, f)) {
        const std::int64_t e = valuation(n, ideal, f);
        if (e > 0) result.entries.push_back({ideal, e});
    }
    return result;
}

double increment(std::int64_t n, const FieldSpec& field, const SSet& s, const FSpec& f) {
    if (n < 1) throw config_error("increment requires n >= 1");
    CompensatedSum sum;
    for (const PrimeIdeal& ideal : ideals_with_f_upto(n, field, s, f)) {
        std::int64_t modulus = f.value_at(ideal);
        while (modulus <= n) {
            if (n % modulus == 0) sum.add(ideal.log_norm);
            if (modulus > n / ideal.norm) break;
            modulus *= ideal.norm;
        }
    }
    return sum.value();
}

namespace {

// Walk the multiples of every modulus f(P) N(P)^k inside [lo, hi], adding
// log N(P).  The per-cell addition order (ideal in norm order, then k) is the
// same for any block partition, so the filled array does not depend on the
// thread count.
void sieve_block(std::vector<double>& values, std::int64_t lo, std::int64_t hi,
                 const std::vector<PrimeIdeal>& ideals, const FSpec& f) {
    for (const PrimeIdeal& ideal : ideals) {
        std::int64_t modulus = f.value_at(ideal);
        while (modulus <= hi) {
            const std::int64_t first = ((lo + modulus - 1) / modulus) * modulus;
            for (std::int64_t m = first; m <= hi; m += modulus)
                values[static_cast<std::size_t>(m)] += ideal.log_norm;
            if (modulus > hi / ideal.norm) break;
            modulus *= ideal.norm;
        }
    }
}

} // namespace

IncrementTable increments_upto(std::int64_t x, const FieldSpec& field, const SSet& s,
                               const FSpec& f, int threads) {
    if (x < 1) throw config_error("increments_upto requires x >= 1");
    if (x > kTableEntryCap)
        throw size_error("table of " + std::to_string(x) + " entries exceeds cap of " +
                         std::to_string(kTableEntryCap));

    const std::vector<PrimeIdeal> ideals = ideals_with_f_upto(x, field, s, f);

    IncrementTable table;
    table.x_max = x;
    table.c = f.c;
    table.values.assign(static_cast<std::size_t>(x) + 1, 0.0);

    if (threads <= 1 || x < 1 << 16) {
        sieve_block(table.values, 1, x, ideals, f);
    } else {
        const int nb = std::min<std::int64_t>(threads, (x + 65535) / 65536);
        std::vector<std::thread> workers;
        const std::int64_t chunk = (x + nb - 1) / nb;
        for (int b = 0; b < nb; ++b) {
            const std::int64_t lo = 1 + b * chunk;
            const std::int64_t hi = std::min<std::int64_t>(x, (b + 1) * chunk);
            if (lo > hi) break;
            workers.emplace_back(
                [&, lo, hi] { sieve_block(table.values, lo, hi, ideals, f); });
        }
        for (auto& w : workers) w.join();
    }

    table.prefix.assign(static_cast<std::size_t>(x) + 1, 0.0);
    CompensatedSum running;
    for (std::int64_t n = 1; n <= x; ++n) {
        running.add(table.values[static_cast<std::size_t>(n)]);
        table.prefix[static_cast<std::size_t>(n)] = running.value();
    }
    return table;
}

double summatory(double x, const IncrementTable& table) {
    if (!(x >= 1.0)) throw config_error("summatory requires x >= 1");
    const std::int64_t idx = static_cast<std::int64_t>(std::floor(x));
    if (idx > table.x_max)
        throw config_error("summatory: x = " + std::to_string(x) + " beyond table x_max = " +
                           std::to_string(table.x_max));
    return table.prefix[static_cast<std::size_t>(idx)];
}

double log_norm_of_ideal(const ExponentIdeal& ideal) {
    CompensatedSum sum;
    for (const auto& entry : ideal.entries)
        sum.add(static_cast<double>(entry.exponent) * entry.ideal.log_norm);
    return sum.value();
}

} // namespace legfact
