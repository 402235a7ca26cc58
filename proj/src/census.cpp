#include "aptuple/census.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "aptuple/errors.hpp"

namespace aptuple {

namespace {

constexpr uint64_t kBlock = uint64_t{1} << 16;

template <CountMode Mode>
uint64_t scan(std::span<const uint8_t> values, std::span<const uint64_t> offsets,
              std::span<const uint8_t> demands, uint64_t first, uint64_t last, uint64_t step) {
    uint64_t count = 0;
    const std::size_t m = offsets.size();
    for (uint64_t n = first; n <= last; n += step) {
        std::size_t i = 0;
        for (; i < m; ++i) {
            const uint8_t v = values[n + offsets[i]];
            if constexpr (Mode == CountMode::exact) {
                if (v != demands[i])
                    break;
            } else {
                if (v == 0 || v > demands[i])
                    break;
            }
        }
        count += i == m;
    }
    return count;
}

}  // namespace

CensusQuery::CensusQuery(Pattern pattern_, Requirements requirements_, uint64_t x_,
                         Parity parity_, CountMode mode_, RangeConvention range_)
    : pattern(std::move(pattern_)),
      requirements(std::move(requirements_)),
      x(x_),
      parity(parity_),
      mode(mode_),
      range(range_) {
    if (pattern.size() != requirements.size())
        throw argument_error("census query: pattern has " + std::to_string(pattern.size()) +
                             " offsets but requirements have " +
                             std::to_string(requirements.size()) + " entries");
}

uint64_t CensusQuery::required_limit() const noexcept {
    return range == RangeConvention::start_le_x ? x + pattern.max_offset() : x;
}

CensusResult count_tuples(const OmegaTable& table, const CensusQuery& query, unsigned workers) {
    const auto started = std::chrono::steady_clock::now();
    if (table.limit() < query.required_limit())
        throw bound_error("count_tuples: table limit " + std::to_string(table.limit()) +
                          " < required " + std::to_string(query.required_limit()));

    std::vector<uint8_t> demands;
    for (unsigned k : query.requirements.demands())
        demands.push_back(static_cast<uint8_t>(std::min(k, 255u)));
    const auto offsets = query.pattern.offsets();

    const uint64_t step = query.parity == Parity::odd_only ? 2 : 1;
    const uint64_t first = 1;
    uint64_t last = query.x;
    if (query.range == RangeConvention::tuple_le_x)
        last = query.x >= query.pattern.max_offset() ? query.x - query.pattern.max_offset() : 0;

    CensusResult result{query, 0, {}};
    if (last >= first) {
        const uint64_t blocks = (last - first) / kBlock + 1;
        if (workers == 0)
            workers = std::max(1u, std::thread::hardware_concurrency());
        workers = static_cast<unsigned>(std::min<uint64_t>(workers, blocks));

        std::atomic<uint64_t> next{0};
        std::atomic<uint64_t> total{0};
        auto work = [&] {
            uint64_t local = 0;
            for (uint64_t b; (b = next.fetch_add(1)) < blocks;) {
                // Block starts stay congruent to `first` mod 2.
                const uint64_t lo = first + b * kBlock;
                const uint64_t hi = std::min(last, lo + kBlock - 1);
                local += query.mode == CountMode::exact
                             ? scan<CountMode::exact>(table.values(), offsets, demands, lo, hi, step)
                             : scan<CountMode::at_most>(table.values(), offsets, demands, lo, hi, step);
            }
            total += local;
        };
        if (workers <= 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work);
        }
        result.count = total;
    }
    result.elapsed = std::chrono::steady_clock::now() - started;
    return result;
}

uint64_t count_single(const OmegaTable& table, unsigned k, uint64_t x, Parity parity) {
    return count_tuples(table, CensusQuery(Pattern({0}), Requirements({k}), x, parity)).count;
}

const char* to_string(CountMode mode) noexcept {
    return mode == CountMode::exact ? "exact" : "atmost";
}

const char* to_string(Parity parity) noexcept {
    return parity == Parity::odd_only ? "odd" : "all";
}

const char* to_string(RangeConvention range) noexcept {
    return range == RangeConvention::start_le_x ? "start" : "tuple";
}

}  // namespace aptuple
