#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "legfact/errors.hpp"
#include "legfact/number_field.hpp"
#include "oracles.hpp"

using namespace legfact;

TEST_CASE("field parsing and discriminants") {
    CHECK(FieldSpec::parse("Q").kind == FieldKind::Rationals);
    CHECK(FieldSpec::parse("Q").discriminant == 1);
    CHECK(FieldSpec::parse("Q").degree == 1);

    const FieldSpec qi = FieldSpec::parse("Q(sqrt-1)");
    CHECK(qi.kind == FieldKind::Quadratic);
    CHECK(qi.discriminant == -4);
    CHECK(qi.degree == 2);

    CHECK(FieldSpec::parse("Q(sqrt5)").discriminant == 5);
    CHECK(FieldSpec::parse("Q(sqrt-3)").discriminant == -3);
    CHECK(FieldSpec::parse("Q(sqrt2)").discriminant == 8);
    CHECK(FieldSpec::parse("Q(sqrt-2)").discriminant == -8);
    CHECK(FieldSpec::parse("Q(sqrt3)").discriminant == 12);

    // discriminant = 0 or 1 mod 4
    for (std::int64_t d : {-1, -2, -3, -5, -6, -7, 2, 3, 5, 6, 7, 10, 13}) {
        const std::int64_t disc = FieldSpec::quadratic(d).discriminant;
        const std::int64_t mod = ((disc % 4) + 4) % 4;
        CHECK((mod == 0 || mod == 1));
    }

    CHECK_THROWS_AS(FieldSpec::quadratic(0), config_error);
    CHECK_THROWS_AS(FieldSpec::quadratic(1), config_error);
    CHECK_THROWS_AS(FieldSpec::quadratic(4), config_error);
    CHECK_THROWS_AS(FieldSpec::quadratic(12), config_error);
    CHECK_THROWS_AS(FieldSpec::quadratic(-8), config_error);
    CHECK_THROWS_AS(FieldSpec::parse("Q(sqrt)"), config_error);
    CHECK_THROWS_AS(FieldSpec::parse("Q[i]"), config_error);
    CHECK_THROWS_AS(FieldSpec::parse(""), config_error);

    CHECK(FieldSpec::parse("Q(sqrt-1)").to_string() == "Q(sqrt-1)");
}

TEST_CASE("kronecker symbol examples") {
    CHECK(kronecker_symbol(-4, 5) == 1);
    CHECK(kronecker_symbol(-4, 2) == 0);
    CHECK(kronecker_symbol(-4, 3) == -1);
    CHECK_THROWS_AS(kronecker_symbol(-4, 4), config_error);
    CHECK_THROWS_AS(kronecker_symbol(-4, 1), config_error);
    CHECK_THROWS_AS(kronecker_symbol(5, 91), config_error); // 7 * 13
}

TEST_CASE("kronecker symbol vs quadratic-residue enumeration, p < 1e4") {
    const auto primes = oracles::simple_sieve(10000);
    for (std::int64_t D : {-4LL, -3LL, 5LL, 8LL, -8LL, 12LL}) {
        for (std::int64_t p : primes) {
            if (p == 2) continue; // separate convention, checked below
            CHECK(kronecker_symbol(D, p) == oracles::legendre_by_enumeration(D, p));
        }
    }
    // p = 2: 0 when D even; +1 iff D = +-1 mod 8.
    CHECK(kronecker_symbol(-4, 2) == 0);
    CHECK(kronecker_symbol(8, 2) == 0);
    CHECK(kronecker_symbol(-8, 2) == 0);
    CHECK(kronecker_symbol(12, 2) == 0);
    CHECK(kronecker_symbol(-7, 2) == 1);  // -7 = 1 mod 8
    CHECK(kronecker_symbol(17, 2) == 1);  // 17 = 1 mod 8
    CHECK(kronecker_symbol(-15, 2) == 1); // -15 = 1 mod 8
    CHECK(kronecker_symbol(5, 2) == -1);  // 5 = 5 mod 8
    CHECK(kronecker_symbol(-3, 2) == -1); // -3 = 5 mod 8
}

TEST_CASE("splitting types") {
    const FieldSpec q = FieldSpec::rationals();
    const FieldSpec qi = FieldSpec::parse("Q(sqrt-1)");

    CHECK(splitting_type(qi, 5) == SplittingType::Split);
    CHECK(splitting_type(qi, 3) == SplittingType::Inert);
    CHECK(splitting_type(qi, 2) == SplittingType::Ramified);
    CHECK(splitting_type(q, 7) == SplittingType::Rational);

    // For p not dividing the discriminant exactly one of Split or Inert holds,
    // and the residue degrees above p sum to the field degree.
    for (const FieldSpec& field :
         {qi, FieldSpec::parse("Q(sqrt5)"), FieldSpec::parse("Q(sqrt-3)")}) {
        const auto stream = prime_ideal_stream(field, SSet::empty(), 2500);
        for (std::int64_t p : oracles::simple_sieve(50)) {
            if (field.discriminant % p == 0) continue;
            const SplittingType type = splitting_type(field, p);
            CHECK((type == SplittingType::Split || type == SplittingType::Inert));
            int degree_sum = 0;
            for (const auto& ideal : stream)
                if (ideal.p == p) degree_sum += ideal.residue_degree;
            CHECK(degree_sum == 2);
        }
    }
}

TEST_CASE("rational primes") {
    CHECK(rational_primes(10) == std::vector<std::int64_t>{2, 3, 5, 7});
    CHECK(rational_primes(1) == std::vector<std::int64_t>{});
    CHECK(rational_primes(2) == std::vector<std::int64_t>{2});
    CHECK(rational_primes(100000) == oracles::simple_sieve(100000));
    CHECK(rational_primes(1000000).size() == 78498);
}

TEST_CASE("prime ideal stream over Q(i)") {
    const FieldSpec qi = FieldSpec::parse("Q(sqrt-1)");
    const auto stream = prime_ideal_stream(qi, SSet::empty(), 10);
    REQUIRE(stream.size() == 4);
    CHECK(stream[0].norm == 2);
    CHECK(stream[1].norm == 5);
    CHECK(stream[2].norm == 5);
    CHECK(stream[3].norm == 9);
    CHECK(stream[0].residue_degree == 1);
    CHECK(stream[3].residue_degree == 2);
    CHECK(stream[1].pair_index != stream[2].pair_index);
}

TEST_CASE("prime ideal stream over Q matches rational primes") {
    const auto stream = prime_ideal_stream(FieldSpec::rationals(), SSet::empty(), 10);
    REQUIRE(stream.size() == 4);
    for (std::size_t i = 0; i < stream.size(); ++i) CHECK(stream[i].residue_degree == 1);

    const auto big = prime_ideal_stream(FieldSpec::rationals(), SSet::empty(), 100000);
    const auto primes = rational_primes(100000);
    REQUIRE(big.size() == primes.size());
    for (std::size_t i = 0; i < big.size(); ++i) {
        CHECK(big[i].p == primes[i]);
        CHECK(big[i].norm == primes[i]);
    }
}

TEST_CASE("S-set exclusion") {
    const FieldSpec qi = FieldSpec::parse("Q(sqrt-1)");

    SSet one_of_five;
    one_of_five.entries.push_back({5, SWhich::OneOfSplitPair});
    const auto stream = prime_ideal_stream(qi, one_of_five, 10);
    REQUIRE(stream.size() == 3);
    CHECK(stream[0].norm == 2);
    CHECK(stream[1].norm == 5);
    CHECK(stream[2].norm == 9);

    SSet all_above_five;
    all_above_five.entries.push_back({5, SWhich::AllAbove});
    const auto stream2 = prime_ideal_stream(qi, all_above_five, 10);
    REQUIRE(stream2.size() == 2);
    CHECK(stream2[0].norm == 2);
    CHECK(stream2[1].norm == 9);

    // OneOfSplitPair over a non-split prime is a configuration error.
    SSet bad;
    bad.entries.push_back({3, SWhich::OneOfSplitPair});
    CHECK_THROWS_AS(prime_ideal_stream(qi, bad, 10), config_error);
    CHECK_THROWS_AS(prime_ideal_stream(FieldSpec::rationals(), bad, 10), config_error);

    SSet dup;
    dup.entries.push_back({5, SWhich::AllAbove});
    dup.entries.push_back({5, SWhich::AllAbove});
    CHECK_THROWS_AS(prime_ideal_stream(qi, dup, 10), config_error);

    SSet composite;
    composite.entries.push_back({6, SWhich::AllAbove});
    CHECK_THROWS_AS(prime_ideal_stream(qi, composite, 10), config_error);
}

TEST_CASE("stream ordering and determinism") {
    for (const char* name : {"Q", "Q(sqrt-1)", "Q(sqrt5)", "Q(sqrt-3)", "Q(sqrt3)"}) {
        const FieldSpec field = FieldSpec::parse(name);
        const auto a = prime_ideal_stream(field, SSet::empty(), 20000);
        const auto b = prime_ideal_stream(field, SSet::empty(), 20000);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i > 0) CHECK(a[i].norm >= a[i - 1].norm);
            CHECK(a[i].p == b[i].p);
            CHECK(a[i].pair_index == b[i].pair_index);
            CHECK(a[i].norm == b[i].norm);
            // norm exactness and log consistency
            const std::int64_t expect =
                a[i].residue_degree == 1 ? a[i].p : a[i].p * a[i].p;
            CHECK(a[i].norm == expect);
            CHECK(a[i].log_norm ==
                  doctest::Approx(std::log(double(a[i].norm))).epsilon(1e-15));
        }
        CHECK_THROWS_AS(prime_ideal_stream(field, SSet::empty(), 1), config_error);
    }
}
