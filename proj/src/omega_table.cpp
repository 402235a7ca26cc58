#include "aptuple/omega_table.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <thread>

#include "aptuple/errors.hpp"
#include "aptuple/primes.hpp"

namespace aptuple {

namespace {

uint64_t isqrt(uint64_t n) {
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

unsigned resolve_workers(unsigned requested) {
    if (requested != 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Fills out[0 .. hi-lo) with the factor counts of lo .. hi-1.
// cofactor[i] accumulates the part of lo+i made of primes <= sqrt(limit); a
// mismatch afterwards means exactly one prime above sqrt(limit) remains.
void sieve_segment(uint64_t lo, uint64_t hi, std::span<const uint32_t> base_primes,
                   FactorCount counting, uint8_t* out, std::vector<uint64_t>& cofactor) {
    const uint64_t len = hi - lo;
    std::fill_n(out, len, uint8_t{0});
    cofactor.assign(len, 1);

    for (uint32_t p32 : base_primes) {
        const uint64_t p = p32;
        if (p * p > hi - 1)
            break;
        for (uint64_t q = p;; q *= p) {
            uint64_t start = (lo + q - 1) / q * q;
            start = std::max(start, q);
            const bool bump = counting == FactorCount::with_multiplicity || q == p;
            for (uint64_t n = start; n < hi; n += q) {
                cofactor[n - lo] *= p;
                if (bump)
                    ++out[n - lo];
            }
            if (q > (hi - 1) / p)
                break;
        }
    }

    for (uint64_t n = std::max<uint64_t>(lo, 2); n < hi; ++n)
        if (cofactor[n - lo] != n)
            ++out[n - lo];
}

}  // namespace

OmegaTable::OmegaTable(uint64_t limit, std::vector<uint8_t> values)
    : limit_(limit), values_(std::move(values)) {
    if (values_.size() != limit_ + 1)
        throw argument_error("omega table: value count does not match limit + 1");
}

uint8_t OmegaTable::at(uint64_t n) const {
    if (n > limit_)
        throw bound_error("omega table: index " + std::to_string(n) + " exceeds limit " +
                          std::to_string(limit_));
    return values_[n];
}

OmegaTable build_omega_table(uint64_t limit, const SieveOptions& options) {
    if (limit < 2)
        throw argument_error("build_omega_table: limit must be >= 2");
    if (options.segment_size < 2)
        throw argument_error("build_omega_table: segment_size must be >= 2");
    if (limit >= std::numeric_limits<uint64_t>::max() / 2 ||
        limit + 1 > std::vector<uint8_t>().max_size())
        throw resource_error("build_omega_table: limit too large to address");

    std::vector<uint8_t> values;
    std::vector<uint32_t> base_primes;
    try {
        values.resize(limit + 1);
        base_primes = primes_up_to(isqrt(limit));
    } catch (const std::bad_alloc&) {
        throw resource_error("build_omega_table: cannot allocate " +
                             std::to_string(limit + 1) + " bytes");
    } catch (const std::length_error&) {
        throw resource_error("build_omega_table: limit too large to allocate");
    }

    const uint64_t segment = options.segment_size;
    const uint64_t segments = (limit + 1 + segment - 1) / segment;
    const unsigned workers =
        static_cast<unsigned>(std::min<uint64_t>(resolve_workers(options.workers), segments));

    std::atomic<uint64_t> next{0};
    std::atomic<bool> failed{false};
    auto work = [&] {
        std::vector<uint64_t> cofactor;
        try {
            for (uint64_t s; (s = next.fetch_add(1)) < segments && !failed;) {
                const uint64_t lo = s * segment;
                const uint64_t hi = std::min(limit + 1, lo + segment);
                sieve_segment(lo, hi, base_primes, options.counting, values.data() + lo, cofactor);
            }
        } catch (const std::bad_alloc&) {
            failed = true;
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    if (failed)
        throw resource_error("build_omega_table: out of memory for segment scratch");

    return OmegaTable(limit, std::move(values));
}

OmegaTable build_omega_table(uint64_t limit, uint64_t segment_size, unsigned workers) {
    SieveOptions options;
    options.segment_size = segment_size;
    options.workers = workers;
    return build_omega_table(limit, options);
}

uint64_t count_k_almost(const OmegaTable& table, uint64_t x, unsigned k, Parity parity) {
    if (k == 0)
        throw argument_error("count_k_almost: k must be >= 1");
    if (x > table.limit())
        throw bound_error("count_k_almost: x = " + std::to_string(x) +
                          " exceeds table limit " + std::to_string(table.limit()));
    if (x < 2 || k > 255)
        return 0;
    const auto values = table.values();
    const uint8_t want = static_cast<uint8_t>(k);
    uint64_t count = 0;
    if (parity == Parity::odd_only) {
        for (uint64_t n = 3; n <= x; n += 2)
            count += values[n] == want;
    } else {
        count = static_cast<uint64_t>(std::count(values.begin() + 2, values.begin() + x + 1, want));
    }
    return count;
}

std::vector<uint64_t> k_almost_distribution(const OmegaTable& table, uint64_t x, Parity parity) {
    if (x > table.limit())
        throw bound_error("k_almost_distribution: x = " + std::to_string(x) +
                          " exceeds table limit " + std::to_string(table.limit()));
    std::vector<uint64_t> counts(256, 0);
    const auto values = table.values();
    const uint64_t step = parity == Parity::odd_only ? 2 : 1;
    for (uint64_t n = parity == Parity::odd_only ? 3 : 2; n <= x; n += step)
        ++counts[values[n]];
    counts[0] = 0;
    while (counts.size() > 1 && counts.back() == 0)
        counts.pop_back();
    return counts;
}

void write_table(const OmegaTable& table, std::ostream& out) {
    char header[kTableHeaderSize];
    std::memcpy(header, kTableMagic, 4);
    header[4] = static_cast<char>(kTableVersion);
    uint64_t limit = table.limit();
    for (int i = 0; i < 8; ++i)
        header[5 + i] = static_cast<char>((limit >> (8 * i)) & 0xff);
    out.write(header, sizeof header);
    const auto values = table.values();
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size()));
    if (!out)
        throw resource_error("write_table: write failed");
}

namespace {

uint64_t read_header(std::istream& in) {
    char header[kTableHeaderSize];
    in.read(header, sizeof header);
    if (in.gcount() < 5 || std::memcmp(header, kTableMagic, 4) != 0)
        throw format_error("omega table: bad magic");
    if (static_cast<uint8_t>(header[4]) != kTableVersion)
        throw format_error("omega table: unsupported version " +
                           std::to_string(static_cast<uint8_t>(header[4])));
    if (in.gcount() != static_cast<std::streamsize>(kTableHeaderSize))
        throw corruption_error("omega table: truncated header");
    uint64_t limit = 0;
    for (int i = 0; i < 8; ++i)
        limit |= static_cast<uint64_t>(static_cast<uint8_t>(header[5 + i])) << (8 * i);
    return limit;
}

}  // namespace

OmegaTable read_table(std::istream& in) {
    const uint64_t limit = read_header(in);
    if (limit < 2 || limit >= std::numeric_limits<uint64_t>::max() / 2)
        throw corruption_error("omega table: implausible limit " + std::to_string(limit));
    std::vector<uint8_t> values;
    // Grown chunk by chunk so a corrupt header cannot force one huge allocation.
    constexpr uint64_t chunk = uint64_t{1} << 24;
    try {
        uint64_t remaining = limit + 1;
        while (remaining > 0) {
            const uint64_t take = std::min(remaining, chunk);
            const std::size_t old = values.size();
            values.resize(old + take);
            in.read(reinterpret_cast<char*>(values.data() + old), static_cast<std::streamsize>(take));
            if (static_cast<uint64_t>(in.gcount()) != take)
                throw corruption_error("omega table: payload shorter than declared limit " +
                                       std::to_string(limit));
            remaining -= take;
        }
    } catch (const std::bad_alloc&) {
        throw resource_error("omega table: cannot allocate table of limit " + std::to_string(limit));
    }
    return OmegaTable(limit, std::move(values));
}

void save_table(const OmegaTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw resource_error("save_table: cannot open " + path.string());
    write_table(table, out);
}

OmegaTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw resource_error("load_table: cannot open " + path.string());
    return read_table(in);
}

uint64_t peek_table_limit(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw resource_error("peek_table_limit: cannot open " + path.string());
    return read_header(in);
}

}  // namespace aptuple
