#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aptuple/census.hpp"
#include "aptuple/omega_table.hpp"
#include "aptuple/pattern.hpp"
#include "aptuple/selberg.hpp"

namespace aptuple {

// Scaled copies c*H of a base pattern that all share S(H).
struct PatternFamily {
    Pattern base;
    std::vector<uint64_t> scales;
    std::vector<Pattern> members;
};

// Validates that every scale only uses primes already dividing the base
// distances, that the base is admissible, and that the member Selberg
// constants agree to 1e-9. Throws argument_error otherwise.
PatternFamily make_family(const Pattern& base, std::vector<uint64_t> scales,
                          uint64_t prime_limit = kDefaultPrimeLimit);

// {0,N}, N = 2, 4, 8, 16
PatternFamily pair_family_example();
// {0,N}, N = 4, 8, 16
PatternFamily pair_family_table2();
// {0,2,6} * 2^k, k = 0..3
PatternFamily triple_family_table3();

struct CalibrationOptions {
    Parity parity = Parity::odd_only;
    CountMode mode = CountMode::exact;
    uint64_t prime_limit = kDefaultPrimeLimit;
    unsigned workers = 0;
    // Members whose theoretical count falls below this are rejected.
    double min_theoretical = 50.0;
};

struct MemberResult {
    Pattern member;
    uint64_t actual = 0;
    double theoretical = 0.0;
    double ratio = 0.0;
};

struct CalibrationReport {
    PatternFamily family;
    Requirements requirements;
    uint64_t x = 0;
    double selberg = 0.0;
    std::vector<MemberResult> per_member;
    double mean = 0.0;
    double std_dev = 0.0;            // sample deviation, (n-1) denominator
    double rel_error_percent = 0.0;  // 100 * std_dev / mean
};

// Per member: ratio = census count / prediction with C(K) = 1, all using the
// base pattern's series. Needs at least two members.
CalibrationReport calibrate(const OmegaTable& table, const PatternFamily& family,
                            const Requirements& requirements, uint64_t x,
                            const CalibrationOptions& options = {});

// Aggregation step of calibrate, split out for testing: mean, sample std dev
// and 100 * std_dev / mean of the ratios.
struct RatioStats {
    double mean = 0.0;
    double std_dev = 0.0;
    double rel_error_percent = 0.0;
};
RatioStats ratio_statistics(const std::vector<double>& ratios);

// Single-pattern estimate R^K / (R^(1..1) * prod (log log x)^(k_i-1)/(k_i-1)!).
// insufficient_data_error when the all-prime count is zero.
double estimate_correction_via_ratio(const OmegaTable& table, const Pattern& pattern,
                                     const Requirements& requirements, uint64_t x,
                                     const CalibrationOptions& options = {});

struct SymmetryEntry {
    Requirements order;
    double correction = 0.0;  // mean ratio over the family
    double std_dev = 0.0;     // 0 for a one-member family
    std::vector<uint64_t> counts;
};

struct SymmetryReport {
    std::vector<SymmetryEntry> entries;  // one per distinct permutation
    double max_relative_spread = 0.0;    // (max - min) / min over corrections
};

SymmetryReport symmetry_report(const OmegaTable& table, const PatternFamily& family,
                               const Requirements& requirements, uint64_t x,
                               const CalibrationOptions& options = {});
SymmetryReport symmetry_report(const OmegaTable& table, const Pattern& pattern,
                               const Requirements& requirements, uint64_t x,
                               const CalibrationOptions& options = {});

struct CorrectionRow {
    Requirements requirements;
    CalibrationReport report;
    std::string description;
};

struct ReproducedTables {
    uint64_t x = 0;
    std::vector<PrimorialRow> table1;
    std::vector<CorrectionRow> table2;
    std::vector<CorrectionRow> table3;
};

// Table 1: primorials 2..2310. Table 2: pairs over {0,4},{0,8},{0,16}.
// Table 3: {0,2,6} scaled by 1, 2, 4, 8. Needs table.limit() >= x + 48.
ReproducedTables reproduce_tables(const OmegaTable& table, uint64_t x,
                                  const CalibrationOptions& options = {});

// "prime and semiprime", "three 3-almost-primes", ...
std::string describe_requirements(const Requirements& requirements);

// Writes table1.csv, table2.csv, table3.csv into dir (created if missing).
void write_tables_csv(const ReproducedTables& tables, const std::filesystem::path& dir);

}  // namespace aptuple
