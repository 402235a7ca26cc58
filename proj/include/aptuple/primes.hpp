#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace aptuple {

// All primes p <= limit, ascending (plain sieve of Eratosthenes).
std::vector<uint32_t> primes_up_to(uint64_t limit);

// Deterministic trial division; meant for small arguments and checks.
bool is_prime(uint64_t n);

// Distinct prime factors of n, ascending. n = 0 or 1 gives an empty list.
std::vector<uint64_t> prime_factors(uint64_t n);

}  // namespace aptuple
