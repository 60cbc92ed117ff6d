#include "gridarr/sidon.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

using namespace gridarr;
using testsupport::Rng;

namespace {

// Independent slow Sidon check: materialize all pairwise sums.
bool is_sidon_slow(const std::vector<std::int64_t>& a) {
    std::set<std::int64_t> sums;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j)
            if (!sums.insert(a[i] + a[j]).second) return false;
    return true;
}

// Independent greedy Sidon oracle.
std::vector<std::int64_t> greedy_sidon_oracle(std::size_t count) {
    std::vector<std::int64_t> a;
    while (a.size() < count) {
        std::int64_t c = a.empty() ? 1 : a.back() + 1;
        for (;; ++c) {
            auto trial = a;
            trial.push_back(c);
            if (is_sidon_slow(trial)) break;
        }
        a.push_back(c);
    }
    return a;
}

// All coefficient tuples with |u_i| <= k summing to zero, skipping the zero
// tuple.
std::vector<std::array<int, 4>> all_u(int k) {
    std::vector<std::array<int, 4>> out;
    for (int u1 = -k; u1 <= k; ++u1)
        for (int u2 = -k; u2 <= k; ++u2)
            for (int u3 = -k; u3 <= k; ++u3) {
                int u4 = -(u1 + u2 + u3);
                if (u4 < -k || u4 > k) continue;
                if (!u1 && !u2 && !u3 && !u4) continue;
                out.push_back({u1, u2, u3, u4});
            }
    return out;
}

// Independent trivial-solution verdict: partition by equal values, check
// every part's coefficient sum.
bool trivial_slow(const std::array<int, 4>& u, const std::array<std::int64_t, 4>& x) {
    std::set<std::int64_t> values(x.begin(), x.end());
    for (std::int64_t v : values) {
        int sum = 0;
        for (int i = 0; i < 4; ++i)
            if (x[i] == v) sum += u[i];
        if (sum != 0) return false;
    }
    return true;
}

// Exhaustive quadruple-loop k-fold check.
bool kfold_slow(const std::vector<std::int64_t>& a, int k) {
    auto us = all_u(k);
    for (const auto& u : us)
        for (std::int64_t x1 : a)
            for (std::int64_t x2 : a)
                for (std::int64_t x3 : a)
                    for (std::int64_t x4 : a) {
                        if (std::int64_t(u[0]) * x1 + u[1] * x2 + u[2] * x3 + u[3] * x4 != 0)
                            continue;
                        if (!trivial_slow(u, {x1, x2, x3, x4})) return false;
                    }
    return true;
}

// Independent greedy k-fold oracle: a candidate c is excluded iff some
// equation with at least one coordinate pinned to c, the pinned coefficient
// sum nonzero, and earlier elements elsewhere, sums to zero.
std::vector<std::int64_t> greedy_kfold_oracle(int k, std::size_t count) {
    auto us = all_u(k);
    std::vector<std::int64_t> a{1};
    while (a.size() < count) {
        for (std::int64_t c = a.back() + 1;; ++c) {
            std::vector<std::int64_t> pool = a;
            pool.push_back(c);
            bool excluded = false;
            for (const auto& u : us) {
                for (std::int64_t x1 : pool)
                    for (std::int64_t x2 : pool)
                        for (std::int64_t x3 : pool)
                            for (std::int64_t x4 : pool) {
                                std::array<std::int64_t, 4> x{x1, x2, x3, x4};
                                int pinned = 0;
                                for (int i = 0; i < 4; ++i)
                                    if (x[i] == c) pinned += u[i];
                                bool uses_c = x1 == c || x2 == c || x3 == c || x4 == c;
                                if (!uses_c || pinned == 0) continue;
                                if (std::int64_t(u[0]) * x1 + u[1] * x2 + u[2] * x3 +
                                        u[3] * x4 ==
                                    0)
                                    excluded = true;
                            }
                if (excluded) break;
            }
            if (!excluded) {
                a.push_back(c);
                break;
            }
        }
    }
    return a;
}

}  // namespace

TEST_CASE("classify_solution examples") {
    auto c1 = classify_solution(EquationCoeffs({1, -1, 1, -1}), {5, 5, 9, 9});
    CHECK(c1.partition == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
    CHECK(c1.part_sums == std::vector<std::int64_t>{0, 0});
    CHECK(c1.trivial);

    auto c2 = classify_solution(EquationCoeffs({1, 1, -1, -1}), {1, 3, 2, 2});
    CHECK(c2.partition == std::vector<std::vector<int>>{{0}, {1}, {2, 3}});
    CHECK(c2.part_sums == std::vector<std::int64_t>{1, 1, -2});
    CHECK(!c2.trivial);

    // 2*3 - 3 - 3 + 0*7 = 0; parts {0,1,2},{3}, sums (0,0)
    CHECK(2 * 3 - 3 - 3 + 0 * 7 == 0);
    auto c3 = classify_solution(EquationCoeffs({2, -1, -1, 0}), {3, 3, 3, 7});
    CHECK(c3.partition == std::vector<std::vector<int>>{{0, 1, 2}, {3}});
    CHECK(c3.part_sums == std::vector<std::int64_t>{0, 0});
    CHECK(c3.trivial);

    CHECK_THROWS_AS(EquationCoeffs({1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("classify_solution agrees with the slow enumerator") {
    for (const auto& u : all_u(1))
        for (std::int64_t x1 = 1; x1 <= 4; ++x1)
            for (std::int64_t x2 = 1; x2 <= 4; ++x2)
                for (std::int64_t x3 = 1; x3 <= 4; ++x3)
                    for (std::int64_t x4 = 1; x4 <= 4; ++x4) {
                        std::array<std::int64_t, 4> x{x1, x2, x3, x4};
                        CHECK(classify_solution(EquationCoeffs(u), x).trivial ==
                              trivial_slow(u, x));
                    }
}

TEST_CASE("is_sidon") {
    CHECK(!is_sidon({1, 2, 3}));  // 1+3 = 2+2
    CHECK(is_sidon({1, 2, 4, 8}));
    CHECK(is_sidon_slow({1, 2, 4, 8}));
    CHECK(is_sidon({}));
    CHECK(is_sidon({5}));
    CHECK_THROWS_AS(is_sidon({3, 3}), std::invalid_argument);
}

TEST_CASE("greedy_sidon matches the brute-force oracle") {
    CHECK(greedy_sidon(1) == std::vector<std::int64_t>{1});
    CHECK(greedy_sidon(5) == greedy_sidon_oracle(5));
    CHECK(greedy_sidon(5) == std::vector<std::int64_t>{1, 2, 4, 8, 13});
    CHECK(greedy_sidon(10) == greedy_sidon_oracle(10));
    CHECK(greedy_sidon(10) == std::vector<std::int64_t>{1, 2, 4, 8, 13, 21, 31, 45, 66, 81});
}

TEST_CASE("greedy_kfold starts at 1 and matches the oracle") {
    CHECK(greedy_kfold(1, 1) == std::vector<std::int64_t>{1});
    CHECK(greedy_kfold(7, 1) == std::vector<std::int64_t>{1});
    CHECK(greedy_kfold(1, 5) == greedy_kfold_oracle(1, 5));
    CHECK(greedy_kfold(2, 6) == greedy_kfold_oracle(2, 6));
}

TEST_CASE("greedy_kfold prefixes verify and respect the growth bound") {
    for (int k : {1, 2}) {
        auto a = greedy_kfold(k, 12);
        for (std::size_t m = 1; m <= a.size(); ++m) {
            CHECK(a[m - 1] <= kfold_growth_bound(k, m));
            std::vector<std::int64_t> prefix(a.begin(), a.begin() + m);
            CHECK(is_kfold_sidon(prefix, k).ok);
        }
        CHECK(std::is_sorted(a.begin(), a.end()));
    }
}

TEST_CASE("is_kfold_sidon examples") {
    CHECK(is_kfold_sidon({1, 2}, 2).ok);
    CHECK(kfold_slow({1, 2}, 2));

    auto bad = is_kfold_sidon({1, 2, 3}, 1);
    CHECK(!bad.ok);
    REQUIRE(bad.counterexample);
    const auto& ce = *bad.counterexample;
    // the witness is a genuine nontrivial solution over the set
    std::int64_t sum = 0;
    for (int i = 0; i < 4; ++i) {
        sum += std::int64_t(ce.u.u[i]) * ce.x[i];
        CHECK(std::abs(ce.u.u[i]) <= 1);
        CHECK((ce.x[i] == 1 || ce.x[i] == 2 || ce.x[i] == 3));
    }
    CHECK(sum == 0);
    CHECK(!classify_solution(ce.u, ce.x).trivial);

    auto a = greedy_kfold(2, 10);
    CHECK(is_kfold_sidon(a, 2).ok);
}

TEST_CASE("is_kfold_sidon agrees with the quadruple-loop oracle") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        std::set<std::int64_t> s;
        std::size_t n = 2 + rng.next() % 5;
        while (s.size() < n) s.insert(rng.range(1, 30));
        std::vector<std::int64_t> a(s.begin(), s.end());
        int k = 1 + static_cast<int>(rng.next() % 2);
        CHECK(is_kfold_sidon(a, k).ok == kfold_slow(a, k));
    }
}

TEST_CASE("1-fold Sidon sets are Sidon sets") {
    for (int trial = 0; trial < 40; ++trial) {
        Rng rng(900 + trial);
        std::set<std::int64_t> s;
        while (s.size() < 5) s.insert(rng.range(1, 40));
        std::vector<std::int64_t> a(s.begin(), s.end());
        if (is_kfold_sidon(a, 1).ok) CHECK(is_sidon(a));
    }
    CHECK(is_sidon(greedy_kfold(1, 15)));
}

TEST_CASE("set file round trip and validation") {
    auto path = (std::filesystem::temp_directory_path() / "gridarr_test_set.txt").string();
    std::vector<std::int64_t> a{1, 2, 4, 8};
    write_set(a, path);
    CHECK(read_set(path) == a);
    {
        std::ofstream out(path);
        out << "3\n2\n";
    }
    CHECK_THROWS_AS(read_set(path), ParseError);
    std::remove(path.c_str());
}
