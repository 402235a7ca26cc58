#include <doctest.h>

#include <random>

#include "aptuple/census.hpp"
#include "aptuple/errors.hpp"
#include "oracle.hpp"

using namespace aptuple;

namespace {

uint64_t count(const OmegaTable& t, std::vector<int64_t> h, std::vector<unsigned> k, uint64_t x,
               Parity parity = Parity::odd_only, CountMode mode = CountMode::exact) {
    return count_tuples(t, CensusQuery(Pattern(std::move(h)), Requirements(std::move(k)), x, parity,
                                       mode))
        .count;
}

const OmegaTable& table_1e7() {
    static const OmegaTable t = build_omega_table(10'000'064);
    return t;
}

const std::vector<uint8_t>& oracle_1e7() {
    static const std::vector<uint8_t> t = oracle::spf_omega(10'000'064);
    return t;
}

}  // namespace

TEST_CASE("single-number counts") {
    const auto t = build_omega_table(1000, 100);
    CHECK(count_single(t, 1, 100, Parity::odd_only) == 24);
    CHECK(count_single(t, 1, 2, Parity::odd_only) == 0);
    CHECK(count_single(t, 2, 30, Parity::all) == 10);
    CHECK(count_single(t, 1, 100, Parity::all) == 25);
    for (unsigned k = 1; k <= 9; ++k)
        CHECK(count_single(t, k, 1000, Parity::all) == count_k_almost(t, 1000, k));
}

TEST_CASE("odd n with an odd offset never gives two primes") {
    const auto t = build_omega_table(100'100);
    CHECK(count(t, {0, 1}, {1, 1}, 100'000) == 0);
    // Over all n only (2, 3) survives.
    CHECK(count(t, {0, 1}, {1, 1}, 100'000, Parity::all) == 1);
}

TEST_CASE("matches the naive double loop up to 1e4") {
    const uint64_t x = 10'000;
    const auto t = build_omega_table(x + 200, 333);
    auto omega = [](uint64_t n) { return oracle::omega_trial(n); };
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 120; ++trial) {
        const int m = std::uniform_int_distribution<int>(1, 4)(rng);
        std::vector<int64_t> h{0};
        std::vector<unsigned> k{std::uniform_int_distribution<unsigned>(1, 4)(rng)};
        for (int i = 1; i < m; ++i) {
            h.push_back(std::uniform_int_distribution<int64_t>(1, 60)(rng) * (trial % 3 ? 2 : 1));
            k.push_back(std::uniform_int_distribution<unsigned>(1, 4)(rng));
        }
        const Pattern pattern(h);
        if (pattern.size() != k.size())
            continue;
        const std::vector<uint64_t> offsets(pattern.offsets().begin(), pattern.offsets().end());
        for (Parity parity : {Parity::odd_only, Parity::all})
            for (CountMode mode : {CountMode::exact, CountMode::at_most})
                for (RangeConvention range :
                     {RangeConvention::start_le_x, RangeConvention::tuple_le_x}) {
                    const uint64_t xi = std::uniform_int_distribution<uint64_t>(1, x)(rng);
                    const CensusQuery q(pattern, Requirements(k), xi, parity, mode, range);
                    const oracle::BruteQuery b{offsets,
                                               k,
                                               xi,
                                               parity == Parity::odd_only,
                                               mode == CountMode::at_most,
                                               range == RangeConvention::tuple_le_x};
                    REQUIRE_MESSAGE(count_tuples(t, q).count == oracle::brute_census(b, omega),
                                    pattern.to_string() << " K=" << q.requirements.to_string()
                                                        << " x=" << xi);
                }
    }
}

TEST_CASE("monotone in x and ordered by mode") {
    const auto t = build_omega_table(200'100);
    for (auto k : std::vector<std::vector<unsigned>>{{1, 2}, {2, 2}, {1, 1}, {3, 1}}) {
        uint64_t previous = 0;
        for (uint64_t x = 1000; x <= 200'000; x += 9973) {
            const uint64_t c = count(t, {0, 4}, k, x);
            CHECK(c >= previous);
            previous = c;
            const uint64_t at_most = count(t, {0, 4}, k, x, Parity::odd_only, CountMode::at_most);
            CHECK(at_most >= c);
            if (k == std::vector<unsigned>{1, 1})
                CHECK(at_most == c);
        }
    }
}

TEST_CASE("worker count does not change the result") {
    const auto t = build_omega_table(1'000'100);
    const CensusQuery q(Pattern({0, 2, 6}), Requirements({1, 2, 2}), 1'000'000);
    const uint64_t one = count_tuples(t, q, 1).count;
    CHECK(count_tuples(t, q, 3).count == one);
    CHECK(count_tuples(t, q, 8).count == one);
}

TEST_CASE("errors") {
    const auto t = build_omega_table(1000);
    CHECK_THROWS_AS(count_tuples(t, CensusQuery(Pattern({0, 2}), Requirements({1, 2}), 999)),
                    bound_error);
    CHECK_NOTHROW(count_tuples(t, CensusQuery(Pattern({0, 2}), Requirements({1, 2}), 998)));
    CHECK_NOTHROW(count_tuples(t, CensusQuery(Pattern({0, 2}), Requirements({1, 2}), 1000,
                                              Parity::odd_only, CountMode::exact,
                                              RangeConvention::tuple_le_x)));
    CHECK_THROWS_AS(CensusQuery(Pattern({0, 2}), Requirements({1, 2, 3}), 10), argument_error);
}

TEST_CASE("golden counts at 1e7 against an independent sieve") {
    const auto& t = table_1e7();
    const auto& ref = oracle_1e7();
    auto omega = [&](uint64_t n) { return unsigned(ref[n]); };

    struct Golden {
        std::vector<uint64_t> h;
        std::vector<unsigned> k;
        uint64_t odd;
        uint64_t all;
    };
    // Frozen from the oracle run (odd-only and all-n, exact mode, n <= x).
    const std::vector<Golden> golden = {
        {{0, 2}, {1, 2}, 166649, 166650},       {{0, 4}, {1, 2}, 167037, 167038},
        {{0, 8}, {1, 2}, 166734, 166735},       {{0, 16}, {1, 2}, 167023, 167023},
        {{0, 2, 6}, {1, 1, 2}, 20480, 20480},   {{0, 4, 12}, {1, 1, 2}, 20128, 20128},
        {{0, 8, 24}, {1, 1, 2}, 20413, 20413},  {{0, 16, 48}, {1, 1, 2}, 20260, 20260},
    };
    for (const auto& g : golden) {
        std::vector<int64_t> h(g.h.begin(), g.h.end());
        const uint64_t odd = count(t, h, g.k, 10'000'000);
        const uint64_t all = count(t, h, g.k, 10'000'000, Parity::all);
        CHECK(odd == oracle::brute_census({g.h, g.k, 10'000'000, true, false, false}, omega));
        CHECK(all == oracle::brute_census({g.h, g.k, 10'000'000, false, false, false}, omega));
        CHECK(odd == g.odd);
        CHECK(all == g.all);
    }
}

TEST_CASE("inadmissible pattern is starved") {
    CHECK(count(table_1e7(), {0, 2, 4, 6, 8}, {1, 1, 1, 1, 1}, 10'000'000) <= 1);
}

TEST_CASE("swapped requirements give close counts") {
    const auto& t = table_1e7();
    for (int64_t n : {2, 4, 8, 16}) {
        const double a = double(count(t, {0, n}, {1, 2}, 10'000'000));
        const double b = double(count(t, {0, n}, {2, 1}, 10'000'000));
        CHECK(std::abs(a - b) / std::max(a, b) < 0.03);
    }
}
