#include "aptuple/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aptuple/errors.hpp"
#include "aptuple/primes.hpp"

namespace aptuple {

namespace {

// Primes whose nu_p is reported alongside the value.
uint64_t small_prime_cutoff(const Pattern& pattern) {
    return std::max<uint64_t>(pattern.size(), std::min<uint64_t>(pattern.max_offset(), 100));
}

// sum_{n>=2} n^-s for real s > 1, by Euler-Maclaurin from n = 10.
double zeta_minus_one(double s) {
    constexpr int kHead = 10;
    // B_2j / (2j)!
    constexpr double kBernoulli[] = {1.0 / 12.0,          -1.0 / 720.0,         1.0 / 30240.0,
                                     -1.0 / 1209600.0,    1.0 / 47900160.0,     -691.0 / 1307674368000.0,
                                     1.0 / 74724249600.0};
    double head = 0.0;
    for (int n = kHead - 1; n >= 2; --n)
        head += std::pow(n, -s);
    const double N = kHead;
    double tail = std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s);
    // Rising factorial s (s+1) ... (s+2j-2) times N^(-s-2j+1).
    double rising = s;
    double power = std::pow(N, -s - 1.0);
    for (std::size_t j = 0; j < std::size(kBernoulli); ++j) {
        tail += kBernoulli[j] * rising * power;
        rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        power /= N * N;
    }
    return head + tail;
}

int mobius(int n) {
    int result = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        n /= d;
        if (n % d == 0)
            return 0;
        result = -result;
    }
    return n > 1 ? -result : result;
}

// log of zeta with the Euler factors of the given primes removed. Both pieces
// are computed as log1p of small quantities so the result keeps absolute
// accuracy on the order of 2^-s * eps.
double log_zeta_without(double s, std::span<const uint32_t> removed) {
    double log_euler = 0.0;
    for (uint32_t p : removed)
        log_euler += std::log1p(-std::pow(static_cast<double>(p), -s));
    return std::log1p(zeta_minus_one(s)) + log_euler;
}

// sum_{p > removed.back()} p^-s via Moebius inversion of log zeta.
double prime_zeta_tail(double s, std::span<const uint32_t> removed) {
    double sum = 0.0;
    for (int n = 1; n * s <= 80.0; ++n) {
        const int mu = mobius(n);
        if (mu != 0)
            sum += mu * log_zeta_without(n * s, removed) / n;
    }
    return sum;
}

}  // namespace

double riemann_zeta(double s) {
    if (!(s > 1.0))
        throw argument_error("riemann_zeta: requires s > 1");
    return 1.0 + zeta_minus_one(s);
}

SelbergResult selberg_constant(const Pattern& pattern, std::span<const uint32_t> primes) {
    const std::size_t m = pattern.size();
    if (primes.empty() || primes.back() < m)
        throw argument_error("selberg_constant: prime limit must be >= pattern length " +
                             std::to_string(m));

    SelbergResult result;
    const uint64_t report_cutoff = small_prime_cutoff(pattern);
    const bool log_space = m >= 4;
    const double md = static_cast<double>(m);
    double product = 1.0;
    double log_sum = 0.0;

    for (uint32_t p32 : primes) {
        const uint64_t p = p32;
        const uint64_t nu = nu_mod_p(pattern, p);
        if (p <= report_cutoff)
            result.nu_small_primes[p] = nu;
        result.prime_limit = p;
        if (nu == p) {
            result.value = 0.0;
            result.admissible = false;
            result.tail_bound = 0.0;
            for (uint32_t q : primes) {
                if (q > report_cutoff)
                    break;
                result.nu_small_primes[q] = nu_mod_p(pattern, q);
            }
            return result;
        }
        // (1 - nu/p)(1 - 1/p)^-m = (p - nu)/(p - 1) * (p/(p - 1))^(m-1)
        const double pm1 = static_cast<double>(p - 1);
        if (log_space) {
            log_sum += std::log1p((1.0 - static_cast<double>(nu)) / pm1) +
                       (md - 1.0) * std::log1p(1.0 / pm1);
        } else {
            product *= static_cast<double>(p - nu) / pm1 *
                       std::pow(static_cast<double>(p) / pm1, md - 1.0);
        }
    }

    result.value = log_space ? std::exp(log_sum) : product;
    const double P = static_cast<double>(result.prime_limit);
    // Past max(h_m, 2m) each factor is 1 + O(m^2/p^2) and sum_{p>P} p^-2 < 1/(P log P).
    if (result.prime_limit < std::max<uint64_t>(pattern.max_offset(), 2 * m))
        result.tail_bound = std::numeric_limits<double>::infinity();
    else
        result.tail_bound = result.value * std::expm1(md * md / (P * std::log(P)));
    return result;
}

SelbergResult selberg_constant(const Pattern& pattern, uint64_t prime_limit) {
    if (prime_limit < pattern.size())
        throw argument_error("selberg_constant: prime limit must be >= pattern length " +
                             std::to_string(pattern.size()));
    const auto primes = primes_up_to(prime_limit);
    return selberg_constant(pattern, primes);
}

double pair_constant_closed_form(uint64_t n) {
    if (n == 0 || n % 2 != 0)
        throw argument_error("pair_constant_closed_form: N must be even and positive");
    double value = 2.0 * kTwinPrimeC2;
    for (uint64_t p : prime_factors(n))
        if (p > 2)
            value *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
    return value;
}

double triple_constant_closed_form(uint64_t prime_limit) {
    double value = 4.5;
    for (uint32_t p32 : primes_up_to(prime_limit)) {
        if (p32 < 5)
            continue;
        const double p = p32;
        const double q = p - 1.0;
        value *= 1.0 - (3.0 * p - 1.0) / (q * q * q);
    }
    return value;
}

std::vector<PrimorialRow> primorial_pattern_table(unsigned max_index, uint64_t prime_limit) {
    const auto primes = primes_up_to(prime_limit);
    std::vector<PrimorialRow> rows;
    for (unsigned i = 1; i <= max_index; ++i) {
        PrimorialRow row;
        row.index = i;
        row.n = primorial(i);
        row.euler_product = selberg_constant(Pattern({0, static_cast<int64_t>(row.n)}), primes).value;
        row.closed_form = pair_constant_closed_form(row.n);
        rows.push_back(row);
    }
    return rows;
}

double twin_prime_constant_from_series() {
    // log(1 - 1/(p-1)^2) = -sum_{k>=2} (2^k - 2)/k * p^-k
    const auto explicit_primes = primes_up_to(1000);
    double log_c2 = 0.0;
    for (uint32_t p : explicit_primes) {
        if (p == 2)
            continue;
        const double q = p - 1.0;
        log_c2 += std::log1p(-1.0 / (q * q));
    }
    for (int k = 2; k <= 40; ++k) {
        const double coefficient = (std::ldexp(1.0, k) - 2.0) / k;
        log_c2 -= coefficient * prime_zeta_tail(k, explicit_primes);
    }
    return std::exp(log_c2);
}

}  // namespace aptuple
