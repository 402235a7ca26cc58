#pragma once

#include <cstdint>

#include "aptuple/pattern.hpp"

namespace aptuple {

inline constexpr double kEulerGamma = 0.57721566490153286;

// Second-order constants of the omega / Omega counting asymptotics, as
// published (six digits). Not to be confused with the twin-prime constant.
inline constexpr double kLandauC1 = -0.315718;
inline constexpr double kLandauC2 = 0.754916;

enum class AsymptoticOrder { leading, second_order };

// distinct: omega(n) = k (uses kLandauC1); multiplicity: Omega(n) = k (kLandauC2).
enum class FactorVariant { distinct, multiplicity };

// x / log x * (log log x)^(k-1) / (k-1)!, optionally times the bracket
// 1 + ((k-1) gamma - k(k-1)/2 + C) / log log x.
// domain_error for x < 100, argument_error for k = 0 or k > 21.
double almost_prime_count_asymptotic(double x, unsigned k, AsymptoticOrder order,
                                     FactorVariant variant);

// The bracket alone.
double second_order_bracket(double x, unsigned k, FactorVariant variant);

// pi_{k+1}(x) / pi_k(x) ~ log log x / k
double successor_ratio(double x, unsigned k);

// n! exactly, n <= 20; argument_error above.
uint64_t factorial(unsigned n);

struct TuplePrediction {
    double series = 0.0;
    std::size_t m = 0;
    double x = 0.0;
    double log_x = 0.0;
    double loglog_x = 0.0;
    double x_over_log_power = 0.0;  // x / (log x)^m
    double loglog_power = 0.0;      // (log log x)^(sum k_i - 1)
    double factorial_product = 0.0; // prod (k_i - 1)!
    double correction = 1.0;
    double value = 0.0;
};

// correction * series * x/(log x)^m * prod (log log x)^(k_i-1)/(k_i-1)!
TuplePrediction predict_tuple(double series, const Requirements& requirements, double x,
                              double correction = 1.0);

double predicted_tuple_count(double series, const Requirements& requirements, double x,
                             double correction = 1.0);

// Computes the series of the pattern itself; argument_error when the pattern
// and requirements differ in length.
TuplePrediction predict_tuple(const Pattern& pattern, const Requirements& requirements,
                              double x, double correction = 1.0,
                              uint64_t prime_limit = 1'000'000);

// Recomputations of kLandauC1 / kLandauC2 from their prime sums, truncated at
// prime_limit with a first-order tail estimate.
double landau_c1_from_primes(uint64_t prime_limit);
double landau_c2_from_primes(uint64_t prime_limit);

}  // namespace aptuple
