#include <doctest.h>

#include "hw/error.hpp"
#include "hw/indexsets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

using namespace hw;

namespace {

// All index products prod (k_j+1) <= bound by nested loops over every coordinate.
std::vector<std::uint64_t> brute_products(std::uint64_t bound, std::size_t d) {
    std::vector<std::uint64_t> out;
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t j, std::uint64_t prod) {
        if (j == d) {
            out.push_back(prod);
            return;
        }
        for (std::uint64_t f = 1; prod * f <= bound; ++f) rec(j + 1, prod * f);
    };
    rec(0, 1);
    std::sort(out.begin(), out.end());
    return out;
}

// Q_xi as the union of boxes prod_j [floor(2^{s_j - 1}), 2^{s_j}] over |s|_1 <= xi.
std::set<std::vector<int>> cross_union_oracle(int xi, std::size_t d) {
    std::set<std::vector<int>> out;
    std::vector<int> s(d, 0);
    std::function<void(std::size_t, int)> over_s = [&](std::size_t j, int budget) {
        if (j == d) {
            std::vector<int> k(d);
            std::function<void(std::size_t)> box = [&](std::size_t i) {
                if (i == d) {
                    out.insert(k);
                    return;
                }
                const int lo = s[i] == 0 ? 0 : (1 << (s[i] - 1));
                for (int v = lo; v <= (1 << s[i]); ++v) {
                    k[i] = v;
                    box(i + 1);
                }
            };
            box(0);
            return;
        }
        for (int v = 0; v <= budget; ++v) {
            s[j] = v;
            over_s(j + 1, budget - v);
        }
    };
    over_s(0, xi);
    return out;
}

}  // namespace

TEST_CASE("multi-index and index set basics") {
    CHECK_THROWS_AS(MultiIndex{-1}, InvalidArgument);
    CHECK_THROWS_AS(MultiIndex(std::vector<int>{}), InvalidArgument);
    const IndexSet s(2, {MultiIndex{1, 0}, MultiIndex{0, 1}, MultiIndex{1, 0}});
    CHECK(s.size() == 2);
    CHECK(s[0] == MultiIndex{0, 1});
    CHECK(s.contains(MultiIndex{1, 0}));
    CHECK_FALSE(s.contains(MultiIndex{1, 1}));
    CHECK_THROWS_AS(IndexSet(2, {MultiIndex{1}}), DimensionMismatch);
}

TEST_CASE("rho") {
    CHECK(rho(MultiIndex{0, 0, 0}, 3.3) == 1.0);
    CHECK(rho(MultiIndex{1, 2}, 2.0) == doctest::Approx(36.0));
    CHECK(rho(MultiIndex{3}, 1.0) == doctest::Approx(4.0));
}

TEST_CASE("level sets") {
    CHECK(level_set(1.0, 3).members() == std::vector<MultiIndex>{MultiIndex{0, 0, 0}});
    const auto l2 = level_set(2.0, 2);
    CHECK(l2.members() == std::vector<MultiIndex>{MultiIndex{0, 0}, MultiIndex{0, 1}, MultiIndex{1, 0}});
    CHECK(level_set(4.0, 2).size() == 8);
    CHECK(level_set(4.9, 2).size() == 8);
    CHECK_THROWS_AS((void)level_set(0.5, 2), InvalidArgument);
    for (const auto& k : level_set(30.0, 3)) CHECK(index_product(k) <= 30);
}

TEST_CASE("count_c examples") {
    for (double r : {1.0, 2.5, 17.0, 1e6}) CHECK(count_c(r, 1) == static_cast<std::uint64_t>(std::floor(r)));
    CHECK(count_c(2, 2) == 3);
    CHECK(count_c(4, 2) == 8);
    CHECK_THROWS_AS((void)count_c(0.9, 2), InvalidArgument);
    // Dirichlet divisor summatory function D(n) = sum_{m <= n} tau(m)
    CHECK(count_c(1e4, 2) == 93668);
}

TEST_CASE("count_c equals the brute-force level-set size for r <= 1e4, d <= 3") {
    for (std::size_t d = 1; d <= 3; ++d) {
        const auto products = brute_products(10000, d);
        CountingFunction c(d);
        bool all = true;
        for (std::uint64_t r = 1; r <= 10000; ++r) {
            const auto expected = static_cast<std::uint64_t>(
                std::upper_bound(products.begin(), products.end(), r) - products.begin());
            all = all && c.count(r) == expected;
        }
        CHECK(all);
        for (double r : {1.0, 7.0, 64.0, 500.0})
            CHECK(level_set(r, d).size() == count_c(r, d));
    }
}

TEST_CASE("counting function is monotone in r and d") {
    for (std::size_t d = 1; d <= 4; ++d) {
        CountingFunction c(d), next(d + 1);
        std::uint64_t prev = 0;
        for (std::uint64_t r = 1; r <= 3000; r += 7) {
            const auto v = c.count(r);
            CHECK(v >= prev);
            CHECK(next.count(r) >= v);
            prev = v;
        }
    }
}

TEST_CASE("count bounds") {
    const auto b1 = chernov_dung_bounds(100.0, 1);
    CHECK(b1.lower == doctest::Approx(100.0 * std::log(100.0) / (std::log(100.0) + 1.0)));
    CHECK(b1.lower == doctest::Approx(82.16).epsilon(1e-4));
    CHECK(b1.upper == doctest::Approx(100.0));
    const auto b2 = chernov_dung_bounds(std::exp(2.0), 2);
    CHECK(b2.lower == doctest::Approx(std::exp(2.0)));
    CHECK_THROWS_AS((void)chernov_dung_bounds(1.0, 2), InvalidArgument);
    for (std::size_t d = 1; d <= 5; ++d)
        for (double r : {1.5, 10.0, 1e3, 1e7}) {
            const auto b = chernov_dung_bounds(r, d);
            CHECK(b.lower > 0.0);
            CHECK(b.lower < b.upper);
        }
}

TEST_CASE("count bounds bracket c(r,d) beyond the empirical threshold") {
    std::vector<std::uint64_t> rs;
    for (int i = 0; i < 200; ++i) rs.push_back(static_cast<std::uint64_t>(std::llround(std::pow(10.0, 1.0 + 5.0 * i / 199.0))));
    for (std::size_t d : {2u, 3u, 4u}) {
        const auto probe = probe_r_star(rs, d);
        CAPTURE(d);
        CAPTURE(probe.empirical_r_star());
        CHECK(probe.empirical_r_star() <= 100);
    }
}

TEST_CASE("dyadic blocks") {
    CHECK(dyadic_block(MultiIndex{0}).members() == std::vector<MultiIndex>{MultiIndex{0}, MultiIndex{1}});
    CHECK(dyadic_block(MultiIndex{2}).members() ==
          std::vector<MultiIndex>{MultiIndex{2}, MultiIndex{3}, MultiIndex{4}});
    CHECK(dyadic_block(MultiIndex{1, 0}).size() == 4);
    CHECK(dyadic_level(0) == 0);
    CHECK(dyadic_level(1) == 0);
    CHECK(dyadic_level(2) == 1);
    CHECK(dyadic_level(3) == 2);
    CHECK(dyadic_level(4) == 2);
    CHECK(dyadic_level(5) == 3);
}

TEST_CASE("hyperbolic cross examples") {
    CHECK(hyperbolic_cross(2, 1).size() == 5);
    CHECK(hyperbolic_cross(2, 1).max_coordinate() == 4);
    CHECK(hyperbolic_cross(0, 2).size() == 4);
    const auto q1 = hyperbolic_cross(1, 2);
    CHECK(q1.size() == 8);
    CHECK_FALSE(q1.contains(MultiIndex{2, 2}));
    CHECK(q1.contains(MultiIndex{2, 1}));
}

TEST_CASE("hyperbolic cross equals the union of dyadic blocks") {
    for (std::size_t d = 1; d <= 3; ++d)
        for (int xi = 0; xi <= (d == 3 ? 5 : 7); ++xi) {
            const auto oracle = cross_union_oracle(xi, d);
            const auto q = hyperbolic_cross(xi, d);
            REQUIRE(q.size() == oracle.size());
            CHECK(hyperbolic_cross_size(xi, d) == oracle.size());
            std::size_t i = 0;
            bool same = true;
            for (const auto& k : oracle) same = same && std::ranges::equal(q[i++].entries(), k);
            CHECK(same);
        }
}

TEST_CASE("hyperbolic cross invariants") {
    for (std::size_t d = 1; d <= 3; ++d)
        for (int xi = 0; xi < 6; ++xi) {
            const auto q = hyperbolic_cross(xi, d);
            CHECK(q.is_subset_of(hyperbolic_cross(xi + 1, d)));
            std::uint64_t maxp = 0;
            for (const auto& k : q) maxp = std::max(maxp, index_product(k));
            CHECK(maxp <= (std::uint64_t{1} << (xi + d)));
            for (const auto& k : q) CHECK(in_hyperbolic_cross(k, xi));
        }
    for (int xi = 0; xi <= 12; ++xi) {
        const auto q = hyperbolic_cross(xi, 1);
        CHECK(q.size() == (std::size_t{1} << xi) + 1);
        CHECK(q.max_coordinate() == (1 << xi));
    }
}

TEST_CASE("cross cardinality ratio") {
    CHECK(cross_cardinality_ratio(3, 1) == doctest::Approx(9.0 / 8.0));
    CHECK(cross_cardinality_ratio(10, 1) == doctest::Approx(1025.0 / 1024.0));
    CHECK_THROWS_AS((void)cross_cardinality_ratio(0, 2), InvalidArgument);
    double lo = 1e300, hi = 0.0;
    for (int xi = 3; xi <= 16; ++xi) {
        const double r = cross_cardinality_ratio(xi, 2);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo <= 4.0);
    CHECK_THROWS_AS((void)hyperbolic_cross(31, 1), ResourceLimit);
}
