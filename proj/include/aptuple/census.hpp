#pragma once

#include <chrono>
#include <cstdint>

#include "aptuple/omega_table.hpp"
#include "aptuple/pattern.hpp"

namespace aptuple {

// exact: Omega(n + h_i) = k_i. at_most: 1 <= Omega(n + h_i) <= k_i.
enum class CountMode { exact, at_most };

// start_le_x: n <= x, table extended to x + h_m.
// tuple_le_x: n + h_m <= x.
enum class RangeConvention { start_le_x, tuple_le_x };

struct CensusQuery {
    CensusQuery(Pattern pattern, Requirements requirements, uint64_t x,
                Parity parity = Parity::odd_only, CountMode mode = CountMode::exact,
                RangeConvention range = RangeConvention::start_le_x);

    Pattern pattern;
    Requirements requirements;
    uint64_t x;
    Parity parity;
    CountMode mode;
    RangeConvention range;

    // Smallest table limit that covers every tuple element.
    uint64_t required_limit() const noexcept;
};

struct CensusResult {
    CensusQuery query;
    uint64_t count = 0;
    std::chrono::nanoseconds elapsed{0};
};

// Exhaustive scan over n >= 1. bound_error when the table is too short.
CensusResult count_tuples(const OmegaTable& table, const CensusQuery& query,
                          unsigned workers = 0);

// Pattern {0}: the number of k-almost primes n <= x of the given parity.
uint64_t count_single(const OmegaTable& table, unsigned k, uint64_t x,
                      Parity parity = Parity::odd_only);

const char* to_string(CountMode mode) noexcept;
const char* to_string(Parity parity) noexcept;
const char* to_string(RangeConvention range) noexcept;

}  // namespace aptuple
