// Independent reference computations used by the test suites.  Everything in
// here deliberately avoids the library's own code paths: factorials come from
// exact big integers, prime lists from the plainest sieve, series values from
// direct summation with Euler-Maclaurin tails.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace oracles {

// log(n!) from the exact big-integer factorial (GMP).
double log_factorial_exact(unsigned long n);

// Stirling series with three correction terms; for n >= 100 the omitted term
// is far below double precision.
double log_factorial_stirling(double n);

// Primes <= limit by a plain sieve of Eratosthenes.
std::vector<std::int64_t> simple_sieve(std::int64_t limit);

// Prime factorization of n!, obtained by trial-dividing every m <= n.
std::map<std::int64_t, std::int64_t> factorial_factorization(std::int64_t n);

// -zeta'(s) = sum log n / n^s, direct sum to N plus Euler-Maclaurin tail.
double neg_zeta_prime(double s, std::int64_t N = 20000);

// von Mangoldt Lambda(n) for n = 0..limit.
std::vector<double> von_mangoldt(std::int64_t limit);

// sum_{n<=N} Lambda(n) chi_{-4}(n) / n^s; equals -L'/L(s, chi_{-4}) up to a
// tail far below 1e-8 for N = 1e6.
double neg_l_prime_over_l_chi4(double s, std::int64_t N = 1000000);

// Quadratic-residue test by exhaustive enumeration of squares mod p (odd p).
int legendre_by_enumeration(std::int64_t a, std::int64_t p);

} // namespace oracles
