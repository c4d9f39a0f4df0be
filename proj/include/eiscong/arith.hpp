#pragma once

#include "eiscong/bigrat.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace eiscong {

bool is_prime(std::int64_t n);

/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::vector<std::int64_t> prime_divisors(std::int64_t n);
bool is_squarefree(std::int64_t n);
/// Positive divisors, ascending.
std::vector<std::int64_t> divisors(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);
/// P+(n): largest prime factor, with P+(1) = 1.
std::int64_t largest_prime_factor(std::int64_t n);

/// Divisor power sum sum_{d | n} d^e.
BigInt sigma(std::int64_t n, unsigned e);

/// sigma_e(n) for n = 0..n_max (entry 0 is 0), via a smallest-prime-factor sieve.
std::vector<BigInt> sigma_table(std::int64_t n_max, unsigned e);

/// Primes <= bound, ascending.
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

std::int64_t mod_floor(std::int64_t a, std::int64_t m);

}  // namespace eiscong
