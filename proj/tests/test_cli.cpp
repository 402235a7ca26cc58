#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aptuple/cli.hpp"
#include "aptuple/errors.hpp"
#include "aptuple/omega_table.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
    json parsed() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = aptuple::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("parse_count and next_power_of_two") {
    using aptuple::cli::parse_count;
    CHECK(parse_count("10000000") == 10'000'000);
    CHECK(parse_count("1e7") == 10'000'000);
    CHECK(parse_count("2.5e3") == 2500);
    CHECK_THROWS_AS(parse_count("1.5"), aptuple::argument_error);
    CHECK_THROWS_AS(parse_count("-3"), aptuple::argument_error);
    CHECK_THROWS_AS(parse_count("abc"), aptuple::argument_error);
    CHECK_THROWS_AS(parse_count("1e300"), aptuple::argument_error);

    using aptuple::cli::next_power_of_two;
    CHECK(next_power_of_two(1) == 1);
    CHECK(next_power_of_two(1000) == 1024);
    CHECK(next_power_of_two(1024) == 1024);
    CHECK(next_power_of_two(10'000'016) == (1u << 24));
}

TEST_CASE("admissible") {
    auto r = run({"admissible", "--pattern", "0,2,4,6,8"});
    REQUIRE(r.code == 0);
    auto j = r.parsed();
    CHECK(j["admissible"] == false);
    CHECK(j["witness"] == 5);
    CHECK(j["witnesses"] == json::array({3, 5}));
    CHECK(j["nu"]["5"] == 5);

    j = run({"admissible", "--pattern", "0,2,6"}).parsed();
    CHECK(j["admissible"] == true);
    CHECK(j["witness"].is_null());
}

TEST_CASE("selberg") {
    auto r = run({"selberg", "--pattern", "0,2"});
    REQUIRE(r.code == 0);
    auto j = r.parsed();
    CHECK(j["value"].get<double>() == doctest::Approx(1.320324).epsilon(1e-6));
    CHECK(j["prime_limit"] == 999'983);  // largest prime used
    CHECK(j["admissible"] == true);

    r = run({"selberg", "--pattern", "0,2,6", "--prime-limit", "1e4", "--csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("pattern,value,prime_limit,tail_bound,admissible\n\"0,2,6\",2.85", 0) == 0);

    CHECK(run({"selberg", "--pattern", "0,2", "--csv", "--json"}).code == 2);
}

TEST_CASE("predict") {
    auto r = run({"predict", "--series", "1.3203236", "--k", "1,2", "--x", "1e7", "--correction",
                  "1.1817"});
    REQUIRE(r.code == 0);
    auto j = r.parsed();
    CHECK(j["query"]["x"] == 10'000'000);
    CHECK(j["m"] == 2);
    CHECK(j["log_x"].get<double>() == doctest::Approx(16.11810).epsilon(1e-6));
    CHECK(j["x_over_log_x_pow_m"].get<double>() == doctest::Approx(38492.18).epsilon(1e-6));
    CHECK(j["factorial_product"] == 1.0);
    CHECK(std::abs(j["value"].get<double>() / 1.1817 - 141203.5) / 141203.5 < 1e-3);
    CHECK(j["correction"] == 1.1817);

    j = run({"predict", "--pattern", "0,2", "--k", "1,1", "--x", "1e6"}).parsed();
    CHECK(j["series"].get<double>() == doctest::Approx(1.320324).epsilon(1e-6));
    CHECK(j["query"]["pattern"] == "0,2");

    CHECK(run({"predict", "--k", "1,2", "--x", "1e7"}).code == 2);
    CHECK(run({"predict", "--pattern", "0,2", "--k", "1,2,3", "--x", "1e7"}).code == 2);
}

TEST_CASE("count builds the cache once and reuses it") {
    TempDir dir("aptuple_test_cli_count");
    const std::vector<std::string> args = {"--cache-dir", dir.str(), "count", "--pattern", "0,2",
                                           "--k", "1,2", "--x", "1e5"};
    auto first = run(args);
    REQUIRE(first.code == 0);
    const fs::path cache = dir.path / "omega.bin";
    REQUIRE(fs::exists(cache));
    CHECK(aptuple::peek_table_limit(cache) == 131072);
    CHECK(first.err.find("building") != std::string::npos);
    const auto stamp = fs::last_write_time(cache);

    auto second = run(args);
    REQUIRE(second.code == 0);
    CHECK(second.err.empty());
    CHECK(fs::last_write_time(cache) == stamp);
    CHECK(first.parsed()["count"] == second.parsed()["count"]);
    CHECK(first.parsed()["query"] == second.parsed()["query"]);
    const auto q = first.parsed()["query"];
    CHECK(q["parity"] == "odd");
    CHECK(q["mode"] == "exact");
    CHECK(q["range"] == "start");

    // Cross-check against a direct count.
    const auto t = aptuple::build_omega_table(100'002);
    uint64_t direct = 0;
    for (uint64_t n = 1; n <= 100'000; n += 2)
        direct += t[n] == 1 && t[n + 2] == 2;
    CHECK(first.parsed()["count"] == direct);

    auto csv = run({"--cache-dir", dir.str(), "count", "--pattern", "0,2", "--k", "1,2", "--x",
                    "1e5", "--csv", "--parity", "all", "--mode", "atmost"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("pattern,k,x,parity,mode,range,count,elapsed_s\n\"0,2\",\"1,2\",100000,"
                        "all,atmost,start,",
                        0) == 0);

    auto refused = run({"--cache-dir", dir.str(), "--no-build", "count", "--pattern", "0,2", "--k",
                        "1,2", "--x", "1e6"});
    CHECK(refused.code == 1);
    CHECK(refused.parsed()["error"] == "bound");
    CHECK(fs::last_write_time(cache) == stamp);
}

TEST_CASE("corrupt cache is reported") {
    TempDir dir("aptuple_test_cli_corrupt");
    std::ofstream(dir.path / "omega.bin") << "not a table";
    auto r = run({"--cache-dir", dir.str(), "count", "--pattern", "0,2", "--k", "1,2", "--x",
                  "1000"});
    CHECK(r.code == 1);
    CHECK(r.parsed()["error"] == "format");
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"count", "--pattern", "0,2", "--k", "1,2"}).code == 2);
    CHECK(run({"admissible", "--pattern", "0,x"}).code == 2);
    CHECK(run({"count", "--pattern", "0,2", "--k", "1,0", "--x", "10"}).code == 2);
    CHECK(run({"count", "--pattern", "0,2", "--k", "1,2", "--x", "10", "--mode", "some"}).code ==
          2);
    CHECK(run({"calibrate", "--preset", "nope", "--k", "1,2", "--x", "1e4"}).code == 2);
}

TEST_CASE("sieve writes the table file") {
    TempDir dir("aptuple_test_cli_sieve");
    const auto file = dir.path / "t.bin";
    auto r = run({"sieve", "--limit", "1e5", "--out", file.string()});
    REQUIRE(r.code == 0);
    CHECK(fs::file_size(file) == 13 + 100'001);
    auto j = r.parsed();
    CHECK(j["limit"] == 100'000);
    CHECK(j["counts_by_k"]["1"] == 9592);
    CHECK(j["argmax_k"] == 3);
    CHECK(aptuple::load_table(file) == aptuple::build_omega_table(100'000));

    r = run({"--cache-dir", dir.str(), "sieve", "--limit", "5000"});
    REQUIRE(r.code == 0);
    CHECK(aptuple::peek_table_limit(dir.path / "omega.bin") == 5000);
    CHECK(run({"sieve", "--limit", "1"}).code == 2);
}

TEST_CASE("calibrate and tables") {
    TempDir dir("aptuple_test_cli_calibrate");
    auto r = run({"--cache-dir", dir.str(), "calibrate", "--base", "0,2", "--scales", "1,2,4,8",
                  "--k", "1,2", "--x", "1e6"});
    REQUIRE(r.code == 0);
    auto j = r.parsed();
    CHECK(j["members"].size() == 4);
    CHECK(j["query"]["scales"] == json::array({1, 2, 4, 8}));
    CHECK(std::abs(j["mean"].get<double>() - 1.18) < 0.05);

    auto preset = run({"--cache-dir", dir.str(), "calibrate", "--preset", "pair-example", "--k",
                       "1,2", "--x", "1e6"});
    REQUIRE(preset.code == 0);
    CHECK(preset.parsed()["mean"] == j["mean"]);

    auto csv = run({"--cache-dir", dir.str(), "calibrate", "--preset", "triple-table3", "--k",
                    "1,1,2", "--x", "1e6", "--csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("pattern,k,x,actual,theoretical,ratio\n", 0) == 0);
    CHECK(csv.out.find("mean,std_dev,rel_error_percent\n") != std::string::npos);

    CHECK(run({"--cache-dir", dir.str(), "calibrate", "--base", "0,2", "--scales", "1,3", "--k",
               "1,2", "--x", "1e5"})
              .code == 2);

    const auto out = dir.path / "tables";
    auto t = run({"--cache-dir", dir.str(), "tables", "--x", "1e5", "--out", out.string()});
    REQUIRE(t.code == 0);
    for (const char* name : {"table1.csv", "table2.csv", "table3.csv"})
        CHECK(fs::exists(out / name));
    j = t.parsed();
    CHECK(j["table1"].size() == 5);
    CHECK(j["table2"].size() == 5);
    CHECK(j["table3"].size() == 6);
}
