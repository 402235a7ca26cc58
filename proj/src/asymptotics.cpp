#include "aptuple/asymptotics.hpp"

#include <cmath>

#include "aptuple/errors.hpp"
#include "aptuple/primes.hpp"
#include "aptuple/selberg.hpp"

namespace aptuple {

namespace {

// log log x must stay comfortably positive.
void check_domain(double x, const char* where) {
    if (!(x >= 100.0))
        throw domain_error(std::string(where) + ": x must be >= 100");
}

}  // namespace

uint64_t factorial(unsigned n) {
    if (n > 20)
        throw argument_error("factorial: " + std::to_string(n) + "! does not fit in 64 bits");
    uint64_t f = 1;
    for (unsigned i = 2; i <= n; ++i)
        f *= i;
    return f;
}

double second_order_bracket(double x, unsigned k, FactorVariant variant) {
    check_domain(x, "second_order_bracket");
    if (k == 0)
        throw argument_error("second_order_bracket: k must be >= 1");
    const double c = variant == FactorVariant::distinct ? kLandauC1 : kLandauC2;
    const double kd = k;
    const double numerator = (kd - 1.0) * kEulerGamma - kd * (kd - 1.0) / 2.0 + c;
    return 1.0 + numerator / std::log(std::log(x));
}

double almost_prime_count_asymptotic(double x, unsigned k, AsymptoticOrder order,
                                     FactorVariant variant) {
    check_domain(x, "almost_prime_count_asymptotic");
    if (k == 0)
        throw argument_error("almost_prime_count_asymptotic: k must be >= 1");
    const double log_x = std::log(x);
    const double loglog_x = std::log(log_x);
    const double leading = x / log_x * std::pow(loglog_x, k - 1.0) /
                           static_cast<double>(factorial(k - 1));
    if (order == AsymptoticOrder::leading)
        return leading;
    return leading * second_order_bracket(x, k, variant);
}

double successor_ratio(double x, unsigned k) {
    check_domain(x, "successor_ratio");
    if (k == 0)
        throw argument_error("successor_ratio: k must be >= 1");
    return std::log(std::log(x)) / k;
}

TuplePrediction predict_tuple(double series, const Requirements& requirements, double x,
                              double correction) {
    check_domain(x, "predicted_tuple_count");
    if (!(series >= 0.0))
        throw argument_error("predicted_tuple_count: series must be >= 0");
    if (!(correction > 0.0))
        throw argument_error("predicted_tuple_count: correction must be > 0");

    TuplePrediction t;
    t.series = series;
    t.m = requirements.size();
    t.x = x;
    t.correction = correction;
    t.log_x = std::log(x);
    t.loglog_x = std::log(t.log_x);
    t.x_over_log_power = x / std::pow(t.log_x, static_cast<double>(t.m));

    unsigned excess = 0;
    t.factorial_product = 1.0;
    for (unsigned k : requirements.demands()) {
        excess += k - 1;
        t.factorial_product *= static_cast<double>(factorial(k - 1));
    }
    t.loglog_power = std::pow(t.loglog_x, static_cast<double>(excess));
    t.value = correction * series * t.x_over_log_power * t.loglog_power / t.factorial_product;
    return t;
}

double predicted_tuple_count(double series, const Requirements& requirements, double x,
                             double correction) {
    return predict_tuple(series, requirements, x, correction).value;
}

TuplePrediction predict_tuple(const Pattern& pattern, const Requirements& requirements,
                              double x, double correction, uint64_t prime_limit) {
    if (pattern.size() != requirements.size())
        throw argument_error("predicted_tuple_count: pattern has " +
                             std::to_string(pattern.size()) + " offsets but requirements have " +
                             std::to_string(requirements.size()) + " entries");
    const double series = selberg_constant(pattern, prime_limit).value;
    return predict_tuple(series, requirements, x, correction);
}

double landau_c1_from_primes(uint64_t prime_limit) {
    double sum = 0.0;
    for (uint32_t p32 : primes_up_to(prime_limit)) {
        const double p = p32;
        sum += std::log1p(-1.0 / p) + 1.0 / p;
    }
    // Terms behave like -1/(2p^2).
    const double P = static_cast<double>(prime_limit);
    return sum - 0.5 / (P * std::log(P));
}

double landau_c2_from_primes(uint64_t prime_limit) {
    double sum = 0.0;
    for (uint32_t p32 : primes_up_to(prime_limit)) {
        const double p = p32;
        sum += std::log1p(-1.0 / p) + 1.0 / (p - 1.0);
    }
    // Terms behave like +1/(2p^2).
    const double P = static_cast<double>(prime_limit);
    return sum + 0.5 / (P * std::log(P));
}

}  // namespace aptuple
