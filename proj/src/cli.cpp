#include "aptuple/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "aptuple/asymptotics.hpp"
#include "aptuple/calibration.hpp"
#include "aptuple/census.hpp"
#include "aptuple/errors.hpp"
#include "aptuple/omega_table.hpp"
#include "aptuple/pattern.hpp"
#include "aptuple/selberg.hpp"

namespace aptuple::cli {

using nlohmann::json;

namespace {

constexpr const char* kCacheFile = "omega.bin";

// Every float leaves the CLI with 7 significant digits.
double sig7(double v) {
    if (!std::isfinite(v))
        return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.7g", v);
    return std::strtod(buf, nullptr);
}

std::string fmt7(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.7g", v);
    return buf;
}

std::string csv_quote(const std::string& s) { return '"' + s + '"'; }

double seconds(std::chrono::nanoseconds d) { return std::chrono::duration<double>(d).count(); }

struct Context {
    std::filesystem::path cache_dir;
    unsigned workers = 0;
    bool no_build = false;
    std::ostream* err = nullptr;
};

// Loads the cached table when it covers `needed`, otherwise rebuilds it to
// the next power of two above `needed` and persists it.
OmegaTable obtain_table(uint64_t needed, const Context& ctx) {
    const auto path = ctx.cache_dir / kCacheFile;
    if (std::filesystem::exists(path)) {
        const uint64_t cached = peek_table_limit(path);
        if (cached >= needed)
            return load_table(path);
    }
    if (ctx.no_build)
        throw bound_error("x needs a table up to " + std::to_string(needed) +
                          " but the cache at " + path.string() + " does not cover it");
    const uint64_t limit = next_power_of_two(needed);
    *ctx.err << "building Omega table up to " << limit << " at " << path.string() << '\n';
    SieveOptions options;
    options.workers = ctx.workers;
    OmegaTable table = build_omega_table(limit, options);
    std::filesystem::create_directories(ctx.cache_dir);
    save_table(table, path);
    return table;
}

json nu_map(const std::map<uint64_t, uint64_t>& nu) {
    json j = json::object();
    for (auto [p, v] : nu)
        j[std::to_string(p)] = v;
    return j;
}

json members_json(const CalibrationReport& report) {
    json arr = json::array();
    for (const auto& m : report.per_member)
        arr.push_back({{"pattern", m.member.to_string()},
                       {"actual", m.actual},
                       {"theoretical", sig7(m.theoretical)},
                       {"ratio", sig7(m.ratio)}});
    return arr;
}

Parity parse_parity(const std::string& s) {
    if (s == "odd")
        return Parity::odd_only;
    if (s == "all")
        return Parity::all;
    throw argument_error("parity must be 'odd' or 'all'");
}

CountMode parse_mode(const std::string& s) {
    if (s == "exact")
        return CountMode::exact;
    if (s == "atmost")
        return CountMode::at_most;
    throw argument_error("mode must be 'exact' or 'atmost'");
}

RangeConvention parse_range(const std::string& s) {
    if (s == "start")
        return RangeConvention::start_le_x;
    if (s == "tuple")
        return RangeConvention::tuple_le_x;
    throw argument_error("range must be 'start' or 'tuple'");
}

std::vector<uint64_t> parse_scales(const std::string& text) {
    std::vector<uint64_t> scales;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos)
            comma = text.size();
        scales.push_back(parse_count(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return scales;
}

}  // namespace

uint64_t parse_count(std::string_view text) {
    const std::string s(text);
    if (s.empty())
        throw argument_error("expected a number, got an empty string");
    if (s.find_first_of(".eE") != std::string::npos) {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size() || !std::isfinite(v) || v < 0 || v > 9.007199254740992e15 ||
            v != std::floor(v))
            throw argument_error("'" + s + "' is not a non-negative integer");
        return static_cast<uint64_t>(v);
    }
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw argument_error("'" + s + "' is not a non-negative integer");
    return v;
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("APTUPLE_CACHE"); env && *env)
        return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "aptuple";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "aptuple";
    return ".aptuple-cache";
}

uint64_t next_power_of_two(uint64_t n) {
    uint64_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"aptuple: almost-prime tuple census, Selberg constants and correction factors"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string cache_dir;
    unsigned workers = 0;
    bool no_build = false;
    app.add_option("--cache-dir", cache_dir, "Omega table cache directory (default: $APTUPLE_CACHE)");
    app.add_option("--workers", workers, "Worker threads (0 = all cores)");
    app.add_flag("--no-build", no_build, "Fail instead of rebuilding a cache that is too small");

    // sieve
    auto* sieve = app.add_subcommand("sieve", "Build and cache an Omega table");
    std::string sieve_limit;
    uint64_t segment_size = uint64_t{1} << 18;
    std::string sieve_out;
    bool distinct = false;
    sieve->add_option("--limit", sieve_limit, "Inclusive upper bound")->required();
    sieve->add_option("--segment-size", segment_size, "Sieve segment length");
    sieve->add_option("--out", sieve_out, "Write here instead of the cache");
    sieve->add_flag("--distinct", distinct, "Count distinct primes (omega) instead of Omega");

    // admissible
    auto* admissible = app.add_subcommand("admissible", "Check pattern admissibility");
    std::string pattern_text;
    admissible->add_option("--pattern", pattern_text, "Offsets, e.g. 0,2,6")->required();

    // selberg
    auto* selberg = app.add_subcommand("selberg", "Truncated Selberg singular series");
    std::string prime_limit_text = "1000000";
    bool want_csv = false;
    bool want_json = false;
    selberg->add_option("--pattern", pattern_text, "Offsets, e.g. 0,2,6")->required();
    selberg->add_option("--prime-limit", prime_limit_text, "Largest prime in the product");
    selberg->add_flag("--json", want_json, "JSON output (default)");
    selberg->add_flag("--csv", want_csv, "CSV output");

    // predict
    auto* predict = app.add_subcommand("predict", "Conjectured tuple count with intermediates");
    std::string k_text, x_text;
    std::optional<double> series_value;
    double correction = 1.0;
    predict->add_option("--pattern", pattern_text, "Offsets (series computed from them)");
    predict->add_option("--series", series_value, "Precomputed Selberg constant");
    predict->add_option("--k", k_text, "Requirements, e.g. 1,1,2")->required();
    predict->add_option("--x", x_text, "Bound, e.g. 1e7")->required();
    predict->add_option("--correction", correction, "Correction factor C(K)");
    predict->add_option("--prime-limit", prime_limit_text, "Largest prime in the series");
    predict->add_flag("--json", want_json, "JSON output (default)");

    // count
    auto* count = app.add_subcommand("count", "Exhaustive tuple census");
    std::string mode_text = "exact", parity_text = "odd", range_text = "start";
    count->add_option("--pattern", pattern_text, "Offsets, e.g. 0,2,6")->required();
    count->add_option("--k", k_text, "Requirements, e.g. 1,1,2")->required();
    count->add_option("--x", x_text, "Bound on n, e.g. 1e7")->required();
    count->add_option("--mode", mode_text, "exact | atmost");
    count->add_option("--parity", parity_text, "odd | all");
    count->add_option("--range", range_text, "start (n <= x) | tuple (n + h_m <= x)");
    count->add_flag("--json", want_json, "JSON output (default)");
    count->add_flag("--csv", want_csv, "CSV output");

    // calibrate
    auto* calib = app.add_subcommand("calibrate", "Estimate C(K) over a scaled pattern family");
    std::string base_text, scales_text, preset;
    calib->add_option("--base", base_text, "Base pattern, e.g. 0,2");
    calib->add_option("--scales", scales_text, "Scale factors, e.g. 2,4,8");
    calib->add_option("--preset", preset, "pair-example | pair-table2 | triple-table3");
    calib->add_option("--k", k_text, "Requirements, e.g. 1,2")->required();
    calib->add_option("--x", x_text, "Bound, e.g. 1e7")->required();
    calib->add_option("--mode", mode_text, "exact | atmost");
    calib->add_option("--parity", parity_text, "odd | all");
    calib->add_option("--prime-limit", prime_limit_text, "Largest prime in the series");
    calib->add_flag("--json", want_json, "JSON output (default)");
    calib->add_flag("--csv", want_csv, "CSV output");

    // tables
    auto* tables = app.add_subcommand("tables", "Reproduce the three correction/constant tables");
    std::string out_dir = ".";
    tables->add_option("--x", x_text, "Bound, e.g. 1e7")->required();
    tables->add_option("--out", out_dir, "Directory for table1.csv .. table3.csv");
    tables->add_option("--mode", mode_text, "exact | atmost");
    tables->add_option("--parity", parity_text, "odd | all");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (want_json && want_csv) {
        err << "error: --json and --csv are mutually exclusive\n";
        return 2;
    }

    Context ctx;
    ctx.cache_dir = cache_dir.empty() ? default_cache_dir() : std::filesystem::path(cache_dir);
    ctx.workers = workers;
    ctx.no_build = no_build;
    ctx.err = &err;

    try {
        if (*sieve) {
            const uint64_t limit = parse_count(sieve_limit);
            SieveOptions options;
            options.segment_size = segment_size;
            options.workers = workers;
            options.counting = distinct ? FactorCount::distinct : FactorCount::with_multiplicity;
            if (distinct && sieve_out.empty())
                throw argument_error("--distinct tables need --out (the cache holds Omega only)");
            const auto started = std::chrono::steady_clock::now();
            const OmegaTable table = build_omega_table(limit, options);
            const auto built = std::chrono::steady_clock::now() - started;
            std::filesystem::path path = sieve_out;
            if (path.empty()) {
                std::filesystem::create_directories(ctx.cache_dir);
                path = ctx.cache_dir / kCacheFile;
            }
            save_table(table, path);
            const auto dist = k_almost_distribution(table, limit, Parity::all);
            json counts = json::object();
            std::size_t argmax = 1;
            for (std::size_t k = 1; k < dist.size(); ++k) {
                counts[std::to_string(k)] = dist[k];
                if (dist[k] > dist[argmax])
                    argmax = k;
            }
            out << json{{"limit", limit},
                        {"path", path.string()},
                        {"counting", distinct ? "distinct" : "multiplicity"},
                        {"segment_size", segment_size},
                        {"elapsed_s", sig7(seconds(built))},
                        {"counts_by_k", counts},
                        {"argmax_k", argmax}}
                       .dump(2)
                << '\n';
        } else if (*admissible) {
            const Pattern pattern = Pattern::parse(pattern_text);
            const auto verdict = is_admissible(pattern);
            out << json{{"pattern", pattern.to_string()},
                        {"admissible", verdict.admissible},
                        {"witness", verdict.witness ? json(*verdict.witness) : json(nullptr)},
                        {"witnesses", verdict.witnesses},
                        {"nu", nu_map(verdict.nu_values)}}
                       .dump(2)
                << '\n';
        } else if (*selberg) {
            const Pattern pattern = Pattern::parse(pattern_text);
            const auto r = selberg_constant(pattern, parse_count(prime_limit_text));
            if (want_csv) {
                out << "pattern,value,prime_limit,tail_bound,admissible\n"
                    << csv_quote(pattern.to_string()) << ',' << fmt7(r.value) << ','
                    << r.prime_limit << ',' << fmt7(r.tail_bound) << ','
                    << (r.admissible ? "true" : "false") << '\n';
            } else {
                out << json{{"pattern", pattern.to_string()},
                            {"value", sig7(r.value)},
                            {"prime_limit", r.prime_limit},
                            {"tail_bound", sig7(r.tail_bound)},
                            {"admissible", r.admissible},
                            {"nu_per_small_prime", nu_map(r.nu_small_primes)}}
                           .dump(2)
                    << '\n';
            }
        } else if (*predict) {
            const Requirements req = Requirements::parse(k_text);
            const uint64_t x_count = parse_count(x_text);
            const double x = static_cast<double>(x_count);
            TuplePrediction t;
            json echo = json::object();
            if (!pattern_text.empty()) {
                const Pattern pattern = Pattern::parse(pattern_text);
                t = predict_tuple(pattern, req, x, correction, parse_count(prime_limit_text));
                echo["pattern"] = pattern.to_string();
            } else if (series_value) {
                t = predict_tuple(*series_value, req, x, correction);
            } else {
                throw argument_error("predict needs --pattern or --series");
            }
            echo["k"] = req.to_string();
            echo["x"] = x_count;
            out << json{{"query", echo},
                        {"series", sig7(t.series)},
                        {"m", t.m},
                        {"log_x", sig7(t.log_x)},
                        {"loglog_x", sig7(t.loglog_x)},
                        {"x_over_log_x_pow_m", sig7(t.x_over_log_power)},
                        {"loglog_power", sig7(t.loglog_power)},
                        {"factorial_product", sig7(t.factorial_product)},
                        {"correction", sig7(t.correction)},
                        {"value", sig7(t.value)}}
                       .dump(2)
                << '\n';
        } else if (*count) {
            CensusQuery query(Pattern::parse(pattern_text), Requirements::parse(k_text),
                              parse_count(x_text), parse_parity(parity_text), parse_mode(mode_text),
                              parse_range(range_text));
            const OmegaTable table = obtain_table(query.required_limit(), ctx);
            const CensusResult r = count_tuples(table, query, workers);
            if (want_csv) {
                out << "pattern,k,x,parity,mode,range,count,elapsed_s\n"
                    << csv_quote(query.pattern.to_string()) << ','
                    << csv_quote(query.requirements.to_string()) << ',' << query.x << ','
                    << to_string(query.parity) << ',' << to_string(query.mode) << ','
                    << to_string(query.range) << ',' << r.count << ',' << fmt7(seconds(r.elapsed))
                    << '\n';
            } else {
                out << json{{"query",
                             {{"pattern", query.pattern.to_string()},
                              {"k", query.requirements.to_string()},
                              {"x", query.x},
                              {"parity", to_string(query.parity)},
                              {"mode", to_string(query.mode)},
                              {"range", to_string(query.range)}}},
                            {"count", r.count},
                            {"elapsed_s", sig7(seconds(r.elapsed))}}
                           .dump(2)
                    << '\n';
            }
        } else if (*calib) {
            const uint64_t prime_limit = parse_count(prime_limit_text);
            PatternFamily family = [&] {
                if (!preset.empty()) {
                    if (!base_text.empty() || !scales_text.empty())
                        throw argument_error("--preset excludes --base/--scales");
                    if (preset == "pair-example")
                        return pair_family_example();
                    if (preset == "pair-table2")
                        return pair_family_table2();
                    if (preset == "triple-table3")
                        return triple_family_table3();
                    throw argument_error("unknown preset '" + preset + "'");
                }
                if (base_text.empty() || scales_text.empty())
                    throw argument_error("calibrate needs --base and --scales, or --preset");
                return make_family(Pattern::parse(base_text), parse_scales(scales_text), prime_limit);
            }();
            const Requirements req = Requirements::parse(k_text);
            const uint64_t x = parse_count(x_text);
            CalibrationOptions options;
            options.parity = parse_parity(parity_text);
            options.mode = parse_mode(mode_text);
            options.prime_limit = prime_limit;
            options.workers = workers;
            uint64_t needed = x;
            for (const auto& member : family.members)
                needed = std::max(needed, x + member.max_offset());
            const OmegaTable table = obtain_table(needed, ctx);
            const CalibrationReport report = calibrate(table, family, req, x, options);
            if (want_csv) {
                out << "pattern,k,x,actual,theoretical,ratio\n";
                for (const auto& m : report.per_member)
                    out << csv_quote(m.member.to_string()) << ',' << csv_quote(req.to_string())
                        << ',' << x << ',' << m.actual << ',' << fmt7(m.theoretical) << ','
                        << fmt7(m.ratio) << '\n';
                out << "mean,std_dev,rel_error_percent\n"
                    << fmt7(report.mean) << ',' << fmt7(report.std_dev) << ','
                    << fmt7(report.rel_error_percent) << '\n';
            } else {
                json scales = family.scales;
                out << json{{"query",
                             {{"base", family.base.to_string()},
                              {"scales", scales},
                              {"k", req.to_string()},
                              {"x", x},
                              {"parity", to_string(options.parity)},
                              {"mode", to_string(options.mode)}}},
                            {"selberg", sig7(report.selberg)},
                            {"members", members_json(report)},
                            {"mean", sig7(report.mean)},
                            {"std_dev", sig7(report.std_dev)},
                            {"rel_error_percent", sig7(report.rel_error_percent)}}
                           .dump(2)
                    << '\n';
            }
        } else if (*tables) {
            const uint64_t x = parse_count(x_text);
            CalibrationOptions options;
            options.parity = parse_parity(parity_text);
            options.mode = parse_mode(mode_text);
            options.workers = workers;
            const OmegaTable table = obtain_table(x + 48, ctx);
            const ReproducedTables t = reproduce_tables(table, x, options);
            write_tables_csv(t, out_dir);
            auto rows = [](const std::vector<CorrectionRow>& rs) {
                json arr = json::array();
                for (const auto& r : rs)
                    arr.push_back({{"k", r.requirements.to_string()},
                                   {"correction", sig7(r.report.mean)},
                                   {"error_percent", sig7(r.report.rel_error_percent)},
                                   {"description", r.description}});
                return arr;
            };
            json t1 = json::array();
            for (const auto& r : t.table1)
                t1.push_back({{"N", r.n},
                              {"euler_product", sig7(r.euler_product)},
                              {"closed_form", sig7(r.closed_form)}});
            out << json{{"x", x},
                        {"out", out_dir},
                        {"parity", to_string(options.parity)},
                        {"mode", to_string(options.mode)},
                        {"table1", t1},
                        {"table2", rows(t.table2)},
                        {"table3", rows(t.table3)}}
                       .dump(2)
                << '\n';
        }
    } catch (const argument_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        out << json{{"error", e.kind()}, {"message", e.what()}}.dump() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        out << json{{"error", "resource"}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace aptuple::cli
