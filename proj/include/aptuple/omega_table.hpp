#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace aptuple {

// Omega(n) counts prime factors with multiplicity, omega(n) without.
enum class FactorCount { with_multiplicity, distinct };

enum class Parity { all, odd_only };

// values[n] = Omega(n) for 0 <= n <= limit, with values[0] = values[1] = 0.
// Immutable once built; safe to share between reader threads.
class OmegaTable {
public:
    OmegaTable() = default;
    OmegaTable(uint64_t limit, std::vector<uint8_t> values);

    uint64_t limit() const noexcept { return limit_; }
    bool empty() const noexcept { return values_.empty(); }

    uint8_t operator[](uint64_t n) const noexcept { return values_[n]; }
    uint8_t at(uint64_t n) const;

    std::span<const uint8_t> values() const noexcept { return values_; }

    friend bool operator==(const OmegaTable&, const OmegaTable&) = default;

private:
    uint64_t limit_ = 0;
    std::vector<uint8_t> values_;
};

struct SieveOptions {
    uint64_t segment_size = uint64_t{1} << 18;
    // 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
    FactorCount counting = FactorCount::with_multiplicity;
};

// Segmented sieve. The result does not depend on segment size or worker
// count. Throws resource_error when the table cannot be allocated.
OmegaTable build_omega_table(uint64_t limit, const SieveOptions& options = {});
OmegaTable build_omega_table(uint64_t limit, uint64_t segment_size, unsigned workers = 0);

// |{2 <= n <= x : Omega(n) = k, n odd if requested}|
uint64_t count_k_almost(const OmegaTable& table, uint64_t x, unsigned k,
                        Parity parity = Parity::all);

// counts[k] = count_k_almost(table, x, k, parity) for every k up to the
// largest value present; counts[0] is always 0.
std::vector<uint64_t> k_almost_distribution(const OmegaTable& table, uint64_t x,
                                            Parity parity = Parity::all);

// Binary cache layout: "OMGA", version byte (1), limit as u64 little-endian,
// then limit + 1 value bytes. No padding, no checksum.
inline constexpr char kTableMagic[4] = {'O', 'M', 'G', 'A'};
inline constexpr uint8_t kTableVersion = 1;
inline constexpr std::size_t kTableHeaderSize = 13;

void write_table(const OmegaTable& table, std::ostream& out);
OmegaTable read_table(std::istream& in);

void save_table(const OmegaTable& table, const std::filesystem::path& path);
OmegaTable load_table(const std::filesystem::path& path);

// Reads only the header; returns the stored limit.
uint64_t peek_table_limit(const std::filesystem::path& path);

}  // namespace aptuple
