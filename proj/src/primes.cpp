#include "aptuple/primes.hpp"

namespace aptuple {

std::vector<uint32_t> primes_up_to(uint64_t limit) {
    std::vector<uint32_t> primes;
    if (limit < 2)
        return primes;
    std::vector<bool> composite(limit + 1, false);
    for (uint64_t i = 2; i * i <= limit; ++i) {
        if (composite[i])
            continue;
        for (uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    for (uint64_t i = 2; i <= limit; ++i)
        if (!composite[i])
            primes.push_back(static_cast<uint32_t>(i));
    return primes;
}

bool is_prime(uint64_t n) {
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> factors;
    if (n < 2)
        return factors;
    for (uint64_t d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
        if (n % d != 0)
            continue;
        factors.push_back(d);
        while (n % d == 0)
            n /= d;
    }
    if (n > 1)
        factors.push_back(n);
    return factors;
}

}  // namespace aptuple
