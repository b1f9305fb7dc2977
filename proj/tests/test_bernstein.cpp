#include <doctest.h>

#include "hw/approx.hpp"
#include "hw/bernstein.hpp"
#include "hw/error.hpp"
#include "hw/indexsets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace hw;

namespace {

// phi(x) sqrt(g(x)) from the monic recurrence He_{k+1} = x He_k - k He_{k-1}, He_k / sqrt(k!)
double weighted_poly_oracle(const std::vector<double>& c, double x) {
    long double prev = 0.0L, cur = 1.0L, fact = 1.0L, sum = c[0];
    for (std::size_t k = 1; k < c.size(); ++k) {
        const long double next = x * cur - static_cast<long double>(k - 1) * prev;
        prev = cur;
        cur = next;
        fact *= static_cast<long double>(k);
        sum += c[k] * cur / std::sqrt(fact);
    }
    const long double g = std::exp(-0.5L * x * x) / std::sqrt(2.0L * std::numbers::pi_v<long double>);
    return static_cast<double>(sum * std::sqrt(g));
}

double riemann_l2(const std::vector<double>& c) {
    const double h = 1e-3;
    long double s = 0.0L;
    for (double x = -20.0; x <= 20.0; x += h) {
        const double v = weighted_poly_oracle(c, x);
        s += static_cast<long double>(v) * v * h;
    }
    return std::sqrt(static_cast<double>(s));
}

}  // namespace

TEST_CASE("MRS number") {
    CHECK(mrs_number(1) == 1.0);
    CHECK(mrs_number(4) == 2.0);
    CHECK(mrs_number(100) == 10.0);
    for (std::uint64_t m = 1; m < 1000; m += 7) CHECK(mrs_number(m) == std::sqrt(static_cast<double>(m)));
    CHECK_THROWS_AS((void)mrs_number(0), InvalidArgument);
}

TEST_CASE("Nikolskii norms of H_0") {
    const std::vector<double> c{1.0};
    const auto n = nikolskii_norms(c);
    CHECK(n.l2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(n.ratio == doctest::Approx(std::pow(2.0 * std::numbers::pi, 0.25)).epsilon(1e-12));
}

TEST_CASE("Nikolskii L2 norms against a Riemann sum") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int m = 1; m <= 16; ++m) {
        std::vector<double> c(m + 1);
        for (auto& v : c) v = normal(rng);
        const auto n = nikolskii_norms(c);
        CHECK(std::abs(n.l2 - riemann_l2(c)) <= 1e-6);
        // the grid max never exceeds the true sup, and the fine oracle grid agrees closely
        double sup = 0.0;
        for (double x = -20.0; x <= 20.0; x += 1e-3) sup = std::max(sup, std::abs(weighted_poly_oracle(c, x)));
        CHECK(n.linf <= sup * (1.0 + 1e-12));
        CHECK(n.linf >= sup * (1.0 - 1e-3));
    }
}

TEST_CASE("Nikolskii ratio is scale invariant") {
    const std::vector<double> c{0.3, -1.2, 0.7, 2.0, -0.1};
    const double r = nikolskii_norms(c).ratio;
    for (double s : {-3.0, 1e-6, 250.0}) {
        std::vector<double> sc(c);
        for (auto& v : sc) v *= s;
        CHECK(nikolskii_norms(sc).ratio == doctest::Approx(r).epsilon(1e-13));
    }
}

TEST_CASE("Nikolskii statistics") {
    const auto a = nikolskii_check(16, 50, 3);
    const auto b = nikolskii_check(16, 50, 3);
    CHECK(a.max_ratio == b.max_ratio);
    CHECK(a.mean_ratio == b.mean_ratio);
    CHECK(a.min_ratio <= a.mean_ratio);
    CHECK(a.mean_ratio <= a.max_ratio);
    CHECK(a.min_ratio > 0.0);
    CHECK(a.grid_radius == doctest::Approx(14.0));
    CHECK(nikolskii_check(16, 50, 4).max_ratio != a.max_ratio);
    CHECK_THROWS_AS((void)nikolskii_check(0, 10), InvalidArgument);
    CHECK_THROWS_AS((void)nikolskii_check(4, 0), InvalidArgument);

    const std::vector<int> degrees{4, 8, 16, 32};
    const auto sweep = nikolskii_sweep(degrees, 40, 1);
    CHECK(sweep.rows.size() == 4);
    CHECK(sweep.fitted_exponent < 0.4);
}

TEST_CASE("Bernstein estimate at xi = 0") {
    for (double alpha : {0.5, 1.0, 3.0}) {
        const auto e = bernstein_lower_estimate(alpha, 0, 1);
        CHECK(e.n == 2);
        CHECK(e.estimate > 0.0);
        CHECK(e.raw_estimate >= e.estimate);
        CHECK(e.predicted_shape == 1.0);
    }
}

TEST_CASE("Bernstein estimate is capped by the embedding constant") {
    for (double alpha : {1.0, 2.0})
        for (std::size_t d = 1; d <= 2; ++d)
            for (int xi = 0; xi <= (d == 1 ? 6 : 3); ++xi) {
                const auto e = bernstein_lower_estimate(alpha, xi, d);
                CHECK(e.n == hyperbolic_cross_size(xi, d));
                CHECK(e.estimate > 0.0);
                CHECK(e.estimate <= embedding_constant(alpha, d));
                CHECK(e.raw_estimate >= e.estimate * (1.0 - 1e-12));
            }
}

TEST_CASE("Bernstein alpha scaling band") {
    for (int xi : {1, 3, 5}) {
        const double a1 = 1.0, a2 = 2.5;
        const auto e1 = bernstein_lower_estimate(a1, xi, 1);
        const auto e2 = bernstein_lower_estimate(a2, xi, 1);
        // rho_{a2 - a1, k}^{-1/2} over Q_xi = {0..2^xi} ranges over [(2^xi + 1)^{-(a2-a1)/2}, 1]
        const double lo = std::pow(std::exp2(xi) + 1.0, -(a2 - a1) / 2.0);
        const double ratio = e2.estimate / e1.estimate;
        CHECK(ratio >= lo * (1.0 - 1e-9));
        CHECK(ratio <= 1.0 + 1e-9);
    }
}

TEST_CASE("Bernstein sampling in d >= 3") {
    const auto a = bernstein_lower_estimate(1.0, 2, 3, {}, 5);
    const auto b = bernstein_lower_estimate(1.0, 2, 3, {}, 5);
    CHECK(a.estimate == b.estimate);
    CHECK(a.grid_points == 20000);
    CHECK(a.estimate > 0.0);
    CHECK(a.estimate <= embedding_constant(1.0, 3));
}

TEST_CASE("Bernstein guards") {
    BernsteinGrid tight;
    tight.guard = 1000;
    CHECK_THROWS_AS((void)bernstein_lower_estimate(1.0, 4, 1, tight), ResourceLimit);
    BernsteinGrid coarse;
    coarse.spacing = 5.0;
    CHECK_THROWS_AS((void)bernstein_lower_estimate(1.0, 4, 1, coarse), InvalidArgument);
    CHECK_THROWS_AS((void)bernstein_lower_estimate(0.0, 2, 1), InvalidArgument);
    CHECK_THROWS_AS((void)bernstein_lower_estimate(1.0, -1, 1), InvalidArgument);
}
