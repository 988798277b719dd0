#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "legfact/errors.hpp"
#include "legfact/factorial.hpp"
#include "legfact/serialize.hpp"
#include "oracles.hpp"

using namespace legfact;

namespace {

const FieldSpec kQ = FieldSpec::rationals();
const FieldSpec kQi = FieldSpec::parse("Q(sqrt-1)");

PrimeIdeal rational_ideal(std::int64_t p) {
    PrimeIdeal ideal;
    ideal.p = p;
    ideal.residue_degree = 1;
    ideal.norm = p;
    ideal.log_norm = std::log(double(p));
    return ideal;
}

} // namespace

TEST_CASE("fspec shapes and rounding") {
    const FSpec norm = FSpec::exact_norm(1.0);
    const FSpec nm1 = FSpec::norm_minus_one(1.0);

    // c = 1 and ExactNorm is the identity on norms.
    for (std::int64_t n : {2LL, 3LL, 97LL, 1000003LL}) {
        CHECK(norm.value_at(rational_ideal(n)) == n);
        CHECK(nm1.value_at(rational_ideal(n)) == n - 1);
    }
    CHECK(nm1.value_at(rational_ideal(2)) == 1); // clamp keeps f >= 1

    // Half-to-even rounding at c = 0.5.
    const FSpec half = FSpec::exact_norm(0.5);
    CHECK(half.value_at(rational_ideal(3)) == 2);  // 1.5 -> 2
    CHECK(half.value_at(rational_ideal(5)) == 2);  // 2.5 -> 2
    CHECK(half.value_at(rational_ideal(7)) == 4);  // 3.5 -> 4
    CHECK(half.value_at(rational_ideal(2)) == 1);  // 1.0

    FSpec table;
    table.shape = FShape::Table;
    table.c = 1.0;
    table.overrides[{2, 0}] = 5;
    table.validate();
    CHECK(table.value_at(rational_ideal(2)) == 5);
    CHECK(table.value_at(rational_ideal(3)) == 3); // fallback to ExactNorm

    CHECK_THROWS_AS(FSpec::exact_norm(0.0), config_error);
    CHECK_THROWS_AS(FSpec::exact_norm(-1.0), config_error);
    FSpec bad;
    bad.shape = FShape::Table;
    bad.overrides[{2, 0}] = 0;
    CHECK_THROWS_AS(bad.validate(), config_error);

    CHECK(FSpec::parse("norm").shape == FShape::ExactNorm);
    CHECK(FSpec::parse("norm-1").shape == FShape::NormMinusOne);
    CHECK(FSpec::parse("c*norm:2").c == 2.0);
    CHECK(FSpec::parse("c*norm:0.5").c == 0.5);
    CHECK_THROWS_AS(FSpec::parse("c*norm:zero"), config_error);
    CHECK_THROWS_AS(FSpec::parse("squares"), config_error);
}

TEST_CASE("valuation") {
    CHECK(valuation(10, rational_ideal(2), FSpec::exact_norm()) == 8);
    CHECK(valuation(6, rational_ideal(7), FSpec::norm_minus_one()) == 1);
    CHECK(valuation(1, rational_ideal(2), FSpec::exact_norm()) == 0);
    CHECK(valuation(1, rational_ideal(3), FSpec::norm_minus_one()) == 0);
    // f(2) = 1 under norm-1: k-sum runs over moduli 1, 2, 4, ...
    CHECK(valuation(6, rational_ideal(2), FSpec::norm_minus_one()) == 10);
    CHECK_THROWS_AS(valuation(0, rational_ideal(2), FSpec::exact_norm()), config_error);
}

TEST_CASE("factorial ideal examples") {
    const auto ideal4 = factorial_ideal(4, kQ, SSet::empty(), FSpec::exact_norm());
    REQUIRE(ideal4.entries.size() == 2);
    CHECK(ideal4.entries[0].ideal.p == 2);
    CHECK(ideal4.entries[0].exponent == 3);
    CHECK(ideal4.entries[1].ideal.p == 3);
    CHECK(ideal4.entries[1].exponent == 1);
    CHECK(log_norm_of_ideal(ideal4) == doctest::Approx(std::log(24.0)).epsilon(1e-15));

    CHECK(factorial_ideal(1, kQ, SSet::empty(), FSpec::exact_norm()).entries.empty());

    // f(p) = p - 1 at n = 6, confirmed against term-by-term valuation sums.
    const auto ideal6 = factorial_ideal(6, kQ, SSet::empty(), FSpec::norm_minus_one());
    REQUIRE(ideal6.entries.size() == 4);
    CHECK(ideal6.entries[0].exponent == 10); // p = 2
    CHECK(ideal6.entries[1].exponent == 4);  // p = 3
    CHECK(ideal6.entries[2].exponent == 1);  // p = 5
    CHECK(ideal6.entries[3].exponent == 1);  // p = 7

    // Q(i), f = norm, n = 5: both ideals over 5 appear with exponent 1.
    const auto ideal5 = factorial_ideal(5, kQi, SSet::empty(), FSpec::exact_norm());
    int norm5 = 0;
    for (const auto& entry : ideal5.entries)
        if (entry.ideal.norm == 5) {
            ++norm5;
            CHECK(entry.exponent == 1);
        }
    CHECK(norm5 == 2);

    // Support is contained in f(P) <= n.
    for (const auto& entry : ideal6.entries)
        CHECK(FSpec::norm_minus_one().value_at(entry.ideal) <= 6);
}

TEST_CASE("classical factorization oracle, n <= 120") {
    for (std::int64_t n : {2LL, 5LL, 10LL, 30LL, 60LL, 120LL}) {
        const auto expected = oracles::factorial_factorization(n);
        const auto ideal = factorial_ideal(n, kQ, SSet::empty(), FSpec::exact_norm());
        REQUIRE(ideal.entries.size() == expected.size());
        for (const auto& entry : ideal.entries) {
            REQUIRE(expected.count(entry.ideal.p) == 1);
            CHECK(entry.exponent == expected.at(entry.ideal.p));
        }
    }
}

TEST_CASE("increment examples") {
    CHECK(increment(12, kQ, SSet::empty(), FSpec::exact_norm()) ==
          doctest::Approx(std::log(12.0)).epsilon(1e-14));
    CHECK(increment(1, kQi, SSet::empty(), FSpec::exact_norm()) == 0.0);
    CHECK(increment(6, kQ, SSet::empty(), FSpec::norm_minus_one()) ==
          doctest::Approx(5.5294290875114233).epsilon(1e-14));
}

TEST_CASE("increments_upto basic tables") {
    const auto table = increments_upto(12, kQ, SSet::empty(), FSpec::exact_norm());
    CHECK(table.prefix[12] ==
          doctest::Approx(19.987214495661886).epsilon(1e-13)); // log 12! = log 479001600

    const auto tiny = increments_upto(1, kQ, SSet::empty(), FSpec::norm_minus_one());
    CHECK(tiny.x_max == 1);
    CHECK(tiny.values[1] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(tiny.prefix[1] == tiny.values[1]);

    const auto qi = increments_upto(10, kQi, SSet::empty(), FSpec::exact_norm());
    CHECK(qi.values[5] == doctest::Approx(3.2188758248682007).epsilon(1e-14)); // 2 log 5
    CHECK(qi.values[9] == doctest::Approx(std::log(9.0)).epsilon(1e-14));
    CHECK(qi.values[10] ==
          doctest::Approx(std::log(2.0) + 2 * std::log(5.0)).epsilon(1e-14));

    // B(1) over Q(i) with norm-1: only the ramified ideal over 2 has f = 1.
    const auto qi1 = increments_upto(3, kQi, SSet::empty(), FSpec::norm_minus_one());
    CHECK(qi1.values[1] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("sieve agrees with per-n increments to 1e4") {
    struct Config {
        FieldSpec field;
        FSpec f;
    };
    const Config configs[] = {
        {kQ, FSpec::exact_norm()},        {kQ, FSpec::norm_minus_one()},
        {kQ, FSpec::exact_norm(2.0)},     {kQi, FSpec::exact_norm()},
        {kQi, FSpec::norm_minus_one()},
    };
    for (const auto& config : configs) {
        const auto table = increments_upto(10000, config.field, SSet::empty(), config.f);
        for (std::int64_t n = 1; n <= 10000; ++n) {
            const double direct = increment(n, config.field, SSet::empty(), config.f);
            const double scale = std::max(1.0, std::abs(direct));
            REQUIRE(std::abs(table.values[n] - direct) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("classical oracle: prefix equals log n! and telescoping holds") {
    const auto table = increments_upto(500, kQ, SSet::empty(), FSpec::exact_norm());
    for (std::int64_t n = 1; n <= 500; ++n) {
        const double expected = oracles::log_factorial_exact(n);
        const double scale = std::max(1.0, std::abs(expected));
        REQUIRE(std::abs(table.prefix[n] - expected) <= 1e-9 * scale);
        const double via_ideal =
            log_norm_of_ideal(factorial_ideal(n, kQ, SSet::empty(), FSpec::exact_norm()));
        REQUIRE(std::abs(via_ideal - expected) <= 1e-9 * scale);
    }

    // Telescoping for a non-classical weight.
    const auto nm1 = increments_upto(400, kQ, SSet::empty(), FSpec::norm_minus_one());
    for (std::int64_t n : {1LL, 7LL, 100LL, 399LL}) {
        const double via_ideal =
            log_norm_of_ideal(factorial_ideal(n, kQ, SSet::empty(), FSpec::norm_minus_one()));
        CHECK(via_ideal == doctest::Approx(nm1.prefix[n]).epsilon(1e-9));
    }
}

TEST_CASE("large-x prefix matches Stirling") {
    const auto table = increments_upto(100000, kQ, SSet::empty(), FSpec::exact_norm());
    const double expected = oracles::log_factorial_stirling(100000.0);
    CHECK(std::abs(table.prefix[100000] - expected) <= 1e-12 * expected);

    // Monotone, nonnegative.
    for (std::int64_t n = 2; n <= 100000; ++n) {
        REQUIRE(table.values[n] >= 0.0);
        REQUIRE(table.prefix[n] >= table.prefix[n - 1]);
    }
    // Prefix differences reproduce the values within accumulation rounding.
    for (std::int64_t n = 2; n <= 100000; ++n) {
        const double diff = table.prefix[n] - table.prefix[n - 1];
        REQUIRE(std::abs(diff - table.values[n]) <= 4e-16 * std::abs(table.prefix[n]));
    }
}

TEST_CASE("excluding one prime shifts increments by its k-count") {
    SSet s3;
    s3.entries.push_back({3, SWhich::AllAbove});
    const FSpec f = FSpec::exact_norm();
    for (std::int64_t n = 1; n <= 300; ++n) {
        const double with = increment(n, kQ, SSet::empty(), f);
        const double without = increment(n, kQ, s3, f);
        // #{k >= 0 : 3 * 3^k | n} = v_3(n)
        std::int64_t v3 = 0, m = n;
        while (m % 3 == 0) {
            m /= 3;
            ++v3;
        }
        CHECK(with - without == doctest::Approx(v3 * std::log(3.0)).epsilon(1e-12));
    }
}

TEST_CASE("summatory lookup") {
    const auto table = increments_upto(10, kQ, SSet::empty(), FSpec::exact_norm());
    CHECK(summatory(10.7, table) ==
          doctest::Approx(15.104412573075516).epsilon(1e-13)); // log 10!
    CHECK(summatory(1.0, table) == 0.0);
    CHECK_THROWS(summatory(11.0, table));
    CHECK_THROWS(summatory(0.5, table));
}

TEST_CASE("log_norm_of_ideal") {
    CHECK(log_norm_of_ideal(ExponentIdeal{}) == 0.0);
    const auto f10 = factorial_ideal(10, kQ, SSet::empty(), FSpec::exact_norm());
    CHECK(log_norm_of_ideal(f10) ==
          doctest::Approx(15.104412573075516).epsilon(1e-13)); // log 3628800
}

TEST_CASE("table cap is enforced") {
    CHECK_THROWS_AS(increments_upto(kTableEntryCap + 1, kQ, SSet::empty(), FSpec::exact_norm()),
                    size_error);
}

TEST_CASE("thread count does not change the table") {
    const auto serial = increments_upto(100000, kQ, SSet::empty(), FSpec::norm_minus_one(), 1);
    const auto parallel = increments_upto(100000, kQ, SSet::empty(), FSpec::norm_minus_one(), 4);
    REQUIRE(serial.values.size() == parallel.values.size());
    CHECK(std::memcmp(serial.values.data(), parallel.values.data(),
                      serial.values.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(serial.prefix.data(), parallel.prefix.data(),
                      serial.prefix.size() * sizeof(double)) == 0);
}

TEST_CASE("increment table CSV round-trips byte for byte") {
    const auto table = increments_upto(200, kQi, SSet::empty(), FSpec::norm_minus_one());
    std::ostringstream first;
    write_increment_table_csv(first, table);

    std::istringstream in(first.str());
    const IncrementTable reread = read_increment_table_csv(in);
    CHECK(reread.x_max == table.x_max);
    for (std::int64_t n = 1; n <= table.x_max; ++n) {
        REQUIRE(reread.values[n] == table.values[n]);
        REQUIRE(reread.prefix[n] == table.prefix[n]);
    }

    std::ostringstream second;
    write_increment_table_csv(second, reread);
    CHECK(first.str() == second.str());
}
