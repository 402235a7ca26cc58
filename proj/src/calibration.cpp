#include "aptuple/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "aptuple/asymptotics.hpp"
#include "aptuple/errors.hpp"
#include "aptuple/primes.hpp"

namespace aptuple {

namespace {

constexpr double kFamilySelbergTolerance = 1e-9;

double loglog_weight(const Requirements& requirements, double x) {
    const double loglog_x = std::log(std::log(x));
    double w = 1.0;
    for (unsigned k : requirements.demands())
        w *= std::pow(loglog_x, k - 1.0) / static_cast<double>(factorial(k - 1));
    return w;
}

uint64_t census(const OmegaTable& table, const Pattern& pattern, const Requirements& requirements,
                uint64_t x, const CalibrationOptions& options) {
    CensusQuery query(pattern, requirements, x, options.parity, options.mode);
    return count_tuples(table, query, options.workers).count;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.7g", v);
    return buf;
}

}  // namespace

PatternFamily make_family(const Pattern& base, std::vector<uint64_t> scales,
                          uint64_t prime_limit) {
    if (scales.empty())
        throw argument_error("pattern family: no scales given");
    if (!is_admissible(base).admissible)
        throw argument_error("pattern family: base " + base.to_string() + " is not admissible");

    PatternFamily family{base, std::move(scales), {}};
    for (uint64_t c : family.scales) {
        if (!scaling_keeps_support(base, c))
            throw argument_error("pattern family: scale " + std::to_string(c) +
                                 " introduces a prime not dividing the distances of " +
                                 base.to_string());
        family.members.push_back(scale_pattern(base, c));
    }

    const auto primes = primes_up_to(std::max<uint64_t>(prime_limit, base.size()));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Pattern& member : family.members) {
        const double v = selberg_constant(member, primes).value;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo >= kFamilySelbergTolerance)
        throw argument_error("pattern family: member Selberg constants differ by " +
                             format_number(hi - lo));
    return family;
}

PatternFamily pair_family_example() { return make_family(Pattern({0, 2}), {1, 2, 4, 8}); }

PatternFamily pair_family_table2() { return make_family(Pattern({0, 2}), {2, 4, 8}); }

PatternFamily triple_family_table3() {
    return make_family(Pattern({0, 2, 6}), {1, 2, 4, 8});
}

RatioStats ratio_statistics(const std::vector<double>& ratios) {
    RatioStats stats;
    if (ratios.empty())
        return stats;
    const double n = static_cast<double>(ratios.size());
    stats.mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / n;
    if (ratios.size() > 1) {
        double ss = 0.0;
        for (double r : ratios)
            ss += (r - stats.mean) * (r - stats.mean);
        stats.std_dev = std::sqrt(ss / (n - 1.0));
    }
    stats.rel_error_percent = stats.mean != 0.0 ? 100.0 * stats.std_dev / stats.mean : 0.0;
    return stats;
}

CalibrationReport calibrate(const OmegaTable& table, const PatternFamily& family,
                            const Requirements& requirements, uint64_t x,
                            const CalibrationOptions& options) {
    if (family.members.size() < 2)
        throw argument_error("calibrate: family needs at least two members");
    if (requirements.size() != family.base.size())
        throw argument_error("calibrate: requirements length does not match the pattern");

    CalibrationReport report{family, requirements, x, 0.0, {}, 0.0, 0.0, 0.0};
    report.selberg = selberg_constant(family.base, options.prime_limit).value;
    const double theoretical = predicted_tuple_count(report.selberg, requirements,
                                                     static_cast<double>(x));
    if (theoretical < options.min_theoretical)
        throw insufficient_data_error("calibrate: theoretical count " + format_number(theoretical) +
                                      " below threshold " + format_number(options.min_theoretical));

    std::vector<double> ratios;
    for (const Pattern& member : family.members) {
        const uint64_t actual = census(table, member, requirements, x, options);
        const double ratio = static_cast<double>(actual) / theoretical;
        report.per_member.push_back({member, actual, theoretical, ratio});
        ratios.push_back(ratio);
    }
    const RatioStats stats = ratio_statistics(ratios);
    report.mean = stats.mean;
    report.std_dev = stats.std_dev;
    report.rel_error_percent = stats.rel_error_percent;
    return report;
}

double estimate_correction_via_ratio(const OmegaTable& table, const Pattern& pattern,
                                     const Requirements& requirements, uint64_t x,
                                     const CalibrationOptions& options) {
    if (!is_admissible(pattern).admissible)
        throw argument_error("estimate_correction_via_ratio: pattern " + pattern.to_string() +
                             " is not admissible");
    const Requirements primes_only(std::vector<unsigned>(requirements.size(), 1));
    const uint64_t with_k = census(table, pattern, requirements, x, options);
    const uint64_t all_prime =
        requirements.all_ones() ? with_k : census(table, pattern, primes_only, x, options);
    if (all_prime == 0)
        throw insufficient_data_error("estimate_correction_via_ratio: no prime tuples below x");
    return static_cast<double>(with_k) /
           (static_cast<double>(all_prime) * loglog_weight(requirements, static_cast<double>(x)));
}

SymmetryReport symmetry_report(const OmegaTable& table, const PatternFamily& family,
                               const Requirements& requirements, uint64_t x,
                               const CalibrationOptions& options) {
    if (requirements.size() != family.base.size())
        throw argument_error("symmetry_report: requirements length does not match the pattern");
    if (!family.base.all_even())
        throw argument_error("symmetry_report: pattern offsets must be even");

    const double series = selberg_constant(family.base, options.prime_limit).value;
    std::vector<unsigned> order(requirements.demands().begin(), requirements.demands().end());
    std::sort(order.begin(), order.end());

    SymmetryReport report;
    do {
        Requirements permuted(order);
        const double theoretical = predicted_tuple_count(series, permuted, static_cast<double>(x));
        if (theoretical < options.min_theoretical)
            throw insufficient_data_error("symmetry_report: theoretical count " +
                                          format_number(theoretical) + " below threshold");
        SymmetryEntry entry{permuted, 0.0, 0.0, {}};
        std::vector<double> ratios;
        for (const Pattern& member : family.members) {
            const uint64_t c = census(table, member, permuted, x, options);
            entry.counts.push_back(c);
            ratios.push_back(static_cast<double>(c) / theoretical);
        }
        const RatioStats stats = ratio_statistics(ratios);
        entry.correction = stats.mean;
        entry.std_dev = stats.std_dev;
        report.entries.push_back(std::move(entry));
    } while (std::next_permutation(order.begin(), order.end()));

    auto [lo, hi] = std::minmax_element(
        report.entries.begin(), report.entries.end(),
        [](const SymmetryEntry& a, const SymmetryEntry& b) { return a.correction < b.correction; });
    report.max_relative_spread =
        lo->correction > 0.0 ? (hi->correction - lo->correction) / lo->correction : 0.0;
    return report;
}

SymmetryReport symmetry_report(const OmegaTable& table, const Pattern& pattern,
                               const Requirements& requirements, uint64_t x,
                               const CalibrationOptions& options) {
    return symmetry_report(table, make_family(pattern, {1}, options.prime_limit), requirements, x,
                           options);
}

std::string describe_requirements(const Requirements& requirements) {
    static const char* const kCountWords[] = {"", "", "two", "three", "four", "five",
                                              "six", "seven", "eight", "nine"};
    std::vector<unsigned> sorted(requirements.demands().begin(), requirements.demands().end());
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        const std::size_t count = j - i;
        std::string name = sorted[i] == 1   ? "prime"
                           : sorted[i] == 2 ? "semiprime"
                                            : std::to_string(sorted[i]) + "-almost-prime";
        if (!out.empty())
            out += " and ";
        if (count == 1)
            out += name;
        else if (count < std::size(kCountWords))
            out += std::string(kCountWords[count]) + " " + name + "s";
        else
            out += std::to_string(count) + " " + name + "s";
        i = j;
    }
    return out;
}

ReproducedTables reproduce_tables(const OmegaTable& table, uint64_t x,
                                  const CalibrationOptions& options) {
    const uint64_t needed = x + 48;
    if (table.limit() < needed)
        throw bound_error("reproduce_tables: table limit " + std::to_string(table.limit()) +
                          " < required " + std::to_string(needed));

    ReproducedTables tables;
    tables.x = x;
    tables.table1 = primorial_pattern_table(5, options.prime_limit);

    const PatternFamily pairs = pair_family_table2();
    for (auto k : std::vector<std::vector<unsigned>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}) {
        Requirements req(k);
        tables.table2.push_back({req, calibrate(table, pairs, req, x, options),
                                 describe_requirements(req)});
    }
    const PatternFamily triples = triple_family_table3();
    for (auto k : std::vector<std::vector<unsigned>>{
             {1, 1, 2}, {1, 2, 2}, {2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {3, 3, 3}}) {
        Requirements req(k);
        tables.table3.push_back({req, calibrate(table, triples, req, x, options),
                                 describe_requirements(req)});
    }
    return tables;
}

void write_tables_csv(const ReproducedTables& tables, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream out(dir / name);
        if (!out)
            throw resource_error("write_tables_csv: cannot open " + (dir / name).string());
        return out;
    };

    {
        auto out = open("table1.csv");
        out << "N,selberg_euler_product,selberg_closed_form\n";
        for (const auto& row : tables.table1)
            out << row.n << ',' << format_number(row.euler_product) << ','
                << format_number(row.closed_form) << '\n';
    }
    auto write_corrections = [&](const char* name, const std::vector<CorrectionRow>& rows) {
        auto out = open(name);
        out << "requirements,correction_factor,error_percent,description\n";
        for (const auto& row : rows)
            out << "\"(" << row.requirements.to_string() << ")\"," << format_number(row.report.mean)
                << ',' << format_number(row.report.rel_error_percent) << ',' << row.description
                << '\n';
    };
    write_corrections("table2.csv", tables.table2);
    write_corrections("table3.csv", tables.table3);
}

}  // namespace aptuple
