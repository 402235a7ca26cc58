#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "aptuple/pattern.hpp"

namespace aptuple {

// Twin-prime constant prod_{p>2} (1 - 1/(p-1)^2), to 17 digits.
inline constexpr double kTwinPrimeC2 = 0.66016181584686957;

inline constexpr uint64_t kDefaultPrimeLimit = 1'000'000;

struct SelbergResult {
    double value = 0.0;
    uint64_t prime_limit = 0;  // largest prime actually multiplied in
    double tail_bound = 0.0;   // bound on |truncated - full| relative error
    bool admissible = true;
    std::map<uint64_t, uint64_t> nu_small_primes;
};

// Truncated singular series prod_{p <= prime_limit} (1 - nu_p/p)(1 - 1/p)^-m.
// Short-circuits to 0 at the first prime with nu_p = p.
// argument_error when prime_limit < m.
SelbergResult selberg_constant(const Pattern& pattern,
                               uint64_t prime_limit = kDefaultPrimeLimit);

// Same, over a caller-supplied ascending prime list (lets batch callers
// reuse one sieve).
SelbergResult selberg_constant(const Pattern& pattern, std::span<const uint32_t> primes);

// 2 C_2 prod_{p | N, p > 2} (p-1)/(p-2). argument_error when N is odd or 0.
double pair_constant_closed_form(uint64_t n);

// 9/2 prod_{5 <= p <= prime_limit} (1 - (3p-1)/(p-1)^3), the series of {0,2,6}.
double triple_constant_closed_form(uint64_t prime_limit = kDefaultPrimeLimit);

struct PrimorialRow {
    unsigned index = 0;
    uint64_t n = 0;
    double euler_product = 0.0;
    double closed_form = 0.0;
};

// Rows (N_i, S({0, N_i})) for the first max_index primorials.
std::vector<PrimorialRow> primorial_pattern_table(unsigned max_index,
                                                  uint64_t prime_limit = kDefaultPrimeLimit);

// C_2 recomputed to double precision from its Euler product: explicit primes
// up to a small cutoff, the remainder through the prime zeta function.
double twin_prime_constant_from_series();

// Riemann zeta for real s > 1 (Euler-Maclaurin).
double riemann_zeta(double s);

}  // namespace aptuple
