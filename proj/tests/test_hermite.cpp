#include <doctest.h>

#include "hw/error.hpp"
#include "hw/hermite.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace hw;

namespace {

// H_k = He_k / sqrt(k!) with He_k(x) = k! sum_m (-1)^m x^{k-2m} / (m! (k-2m)! 2^m)
double rodrigues_oracle(int k, double x) {
    double sum = 0.0;
    for (int m = 0; 2 * m <= k; ++m) {
        const double term = std::pow(x, k - 2 * m) /
                            (std::tgamma(m + 1.0) * std::tgamma(k - 2.0 * m + 1.0) * std::pow(2.0, m));
        sum += (m % 2 ? -term : term);
    }
    return sum * std::tgamma(k + 1.0) / std::sqrt(std::tgamma(k + 1.0));
}

double double_factorial_odd(int j) {  // (2j-1)!!
    double v = 1.0;
    for (int i = 1; i <= 2 * j - 1; i += 2) v *= i;
    return v;
}

}  // namespace

TEST_CASE("gaussian density") {
    const std::vector<double> z1{0.0};
    CHECK(gaussian_density(z1) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
    const std::vector<double> z2{0.0, 0.0};
    CHECK(gaussian_density(z2) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));
    const std::vector<double> p{1.0}, m{-1.0};
    CHECK(gaussian_density(p) == gaussian_density(m));
    CHECK(gaussian_density(std::vector<double>{30.0}) > 0.0);
}

TEST_CASE("hermite_eval examples") {
    CHECK(hermite_eval(0, 3.7) == 1.0);
    CHECK(std::abs(hermite_eval(2, 1.0)) < 1e-15);
    CHECK(hermite_eval(3, 0.0) == 0.0);
    CHECK(hermite_eval(2, 3.0) == doctest::Approx(8.0 / std::sqrt(2.0)));
    CHECK_THROWS_AS((void)hermite_eval(-1, 0.0), InvalidArgument);
}

TEST_CASE("recurrence agrees with the Rodrigues expansion") {
    for (int k = 0; k <= 10; ++k)
        for (int i = 0; i < 20; ++i) {
            const double x = -4.0 + 8.0 * i / 19.0;
            const double ref = rodrigues_oracle(k, x);
            const double got = hermite_eval(k, x);
            CHECK(std::abs(got - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("weighted evaluation") {
    CHECK(hermite_eval_weighted(0, 0.0) == doctest::Approx(std::pow(2.0 * std::numbers::pi, -0.25)).epsilon(1e-15));
    CHECK(std::abs(hermite_eval_weighted(2, 1.0)) < 1e-15);
    // direct and log-scaled paths agree where both are accurate
    for (int k : {0, 5, 40, 200})
        for (double x : {-3.0, 0.5, 10.0, 20.0}) {
            const double direct = hermite_eval(k, x) * std::exp(-x * x / 4.0) * std::pow(2.0 * std::numbers::pi, -0.25);
            CHECK(hermite_eval_weighted(k, x) == doctest::Approx(direct).epsilon(1e-9).scale(1e-300));
        }
    const auto all = hermite_all_weighted(300, 50.0);
    CHECK(all[300] == doctest::Approx(hermite_eval_weighted(300, 50.0)).epsilon(1e-12));
}

TEST_CASE("weighted bound min(1, sqrt(pi) k^{-1/12})") {
    const int kmax = 500;
    const double radius = std::sqrt(2.0 * kmax) + 6.0;
    double worst = 0.0;
    for (double x = -radius; x <= radius; x += 0.01) {
        const auto w = hermite_all_weighted(kmax, x);
        for (int k = 1; k <= kmax; ++k) {
            const double bound = std::min(1.0, std::sqrt(std::numbers::pi) * std::pow(k, -1.0 / 12.0));
            worst = std::max(worst, std::abs(w[k]) / bound);
        }
    }
    CHECK(worst <= 1.0);
}

TEST_CASE("weighted evaluation never overflows") {
    for (double x = -150.0; x <= 150.0; x += 0.37) {
        const double v = hermite_eval_weighted(10000, x);
        CHECK(std::isfinite(v));
        CHECK(std::abs(v) <= 1.0);
    }
    CHECK(std::isfinite(hermite_eval_weighted(10000, 1e4)));
    const auto all = hermite_all_weighted(10000, 123.0);
    for (double v : all) CHECK(std::isfinite(v));
}

TEST_CASE("tensor evaluation") {
    CHECK(tensor_eval(MultiIndex{0, 0}, std::vector<double>{3.0, -1.0}) == 1.0);
    CHECK(std::abs(tensor_eval(MultiIndex{2, 0}, std::vector<double>{1.0, 5.0})) < 1e-15);
    CHECK(tensor_eval(MultiIndex{1, 1}, std::vector<double>{2.0, 3.0}) == doctest::Approx(6.0));
    CHECK_THROWS_AS((void)tensor_eval(MultiIndex{1, 1}, std::vector<double>{2.0}), DimensionMismatch);
    const std::vector<double> x{0.3, -1.2};
    CHECK(tensor_eval_weighted(MultiIndex{3, 2}, x) ==
          doctest::Approx(tensor_eval(MultiIndex{3, 2}, x) * std::sqrt(gaussian_density(x))));
}

TEST_CASE("Gauss-Hermite rule") {
    const auto r1 = gauss_hermite_rule(1);
    REQUIRE(r1.size() == 1);
    CHECK(std::abs(r1.nodes[0]) < 1e-15);
    CHECK(r1.weights[0] == doctest::Approx(1.0));

    const auto r2 = gauss_hermite_rule(2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(r2.nodes[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(0.5).epsilon(1e-14));

    CHECK(gauss_hermite_rule(3).integrate([](double x) { return x * x * x * x; }) ==
          doctest::Approx(3.0).epsilon(1e-13));
    CHECK_THROWS_AS((void)gauss_hermite_rule(0), InvalidArgument);

    for (int m : {1, 2, 5, 10, 20, 40, 80}) {
        const auto r = gauss_hermite_rule(m);
        double s = 0.0;
        for (double w : r.weights) {
            CHECK(w > 0.0);
            s += w;
        }
        CHECK(std::abs(s - 1.0) < 1e-12);
        for (std::size_t i = 0; i + 1 < r.size(); ++i) CHECK(r.nodes[i] < r.nodes[i + 1]);
        for (std::size_t i = 0; i < r.size(); ++i)
            CHECK(r.nodes[i] == doctest::Approx(-r.nodes[r.size() - 1 - i]).epsilon(1e-14).scale(1e-14));
        for (double x : r.nodes) CHECK(std::abs(hermite_eval(m, x)) < 1e-8 * std::max(1.0, std::abs(hermite_eval(m, x + 0.1))));
        // Gaussian moments E x^{2j} = (2j-1)!! for 2j <= 2m-1
        for (int j = 1; 2 * j <= 2 * m - 1 && j <= 12; ++j) {
            const double got = r.integrate([j](double x) { return std::pow(x, 2 * j); });
            CHECK(got == doctest::Approx(double_factorial_odd(j)).epsilon(1e-10));
        }
    }
}

TEST_CASE("orthonormality for j, k <= 40") {
    double worst = 0.0;
    for (int j = 0; j <= 40; ++j)
        for (int k = 0; k <= 40; ++k) {
            const auto r = gauss_hermite_rule((j + k) / 2 + 1);
            const double v = r.integrate([&](double x) { return hermite_eval(j, x) * hermite_eval(k, x); });
            worst = std::max(worst, std::abs(v - (j == k ? 1.0 : 0.0)));
        }
    CHECK(worst <= 1e-10);
}

TEST_CASE("hermite_transform examples") {
    const IndexSet i3(1, {MultiIndex{0}, MultiIndex{1}, MultiIndex{2}});
    const auto one = hermite_transform([](std::span<const double>) { return 1.0; }, 1, i3, 4);
    CHECK(one.coefficient(MultiIndex{0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(one.coefficient(MultiIndex{1})) < 1e-12);
    CHECK(std::abs(one.coefficient(MultiIndex{2})) < 1e-12);

    const IndexSet i2(1, {MultiIndex{0}, MultiIndex{1}});
    const auto lin = hermite_transform([](std::span<const double> x) { return x[0]; }, 1, i2, 4);
    CHECK(std::abs(lin.coefficient(MultiIndex{0})) < 1e-12);
    CHECK(lin.coefficient(MultiIndex{1}) == doctest::Approx(1.0).epsilon(1e-12));

    const auto sq = hermite_transform([](std::span<const double> x) { return x[0] * x[0]; }, 1, i3, 4);
    CHECK(sq.coefficient(MultiIndex{0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(sq.coefficient(MultiIndex{1})) < 1e-12);
    CHECK(sq.coefficient(MultiIndex{2}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS((void)hermite_transform([](std::span<const double>) { return 1.0; }, 1, IndexSet(1, {}), 4),
                    InvalidArgument);
    CHECK_THROWS_AS((void)hermite_transform([](std::span<const double>) { return 1.0; }, 2, i3, 4),
                    DimensionMismatch);
}

TEST_CASE("transform round trip") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    for (std::size_t d : {1u, 2u, 3u}) {
        HermiteSeries s(d);
        std::uniform_int_distribution<int> deg(0, d == 1 ? 12 : 5);
        for (int t = 0; t < 10; ++t) {
            std::vector<int> k(d);
            for (auto& v : k) v = deg(rng);
            s.set(MultiIndex(k), normal(rng));
        }
        const int m = s.max_degree() + 1;  // 2 max_degree <= 2m - 1
        const auto back = hermite_transform([&](std::span<const double> x) { return series_eval(s, x); }, d,
                                            s.support(), m);
        for (const auto& [k, c] : s.coefficients()) CHECK(std::abs(back.coefficient(k) - c) <= 1e-9);
    }
}

TEST_CASE("series evaluation and norms") {
    HermiteSeries s(2);
    s.set(MultiIndex{1, 0}, 2.0);
    s.set(MultiIndex{0, 3}, -1.5);
    const std::vector<double> x{0.7, -0.4};
    const double direct = 2.0 * hermite_eval(1, 0.7) - 1.5 * hermite_eval(3, -0.4);
    CHECK(s(x) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(s.weighted(x) == doctest::Approx(direct * std::sqrt(gaussian_density(x))).epsilon(1e-13));
    CHECK_THROWS_AS(s.set(MultiIndex{1}, 1.0), DimensionMismatch);
    CHECK_THROWS_AS(s.set(MultiIndex{1, 1}, std::nan("")), InvalidArgument);

    CHECK(norm_l2_gamma(HermiteSeries(1)) == 0.0);
    CHECK(norm_l2_gamma(HermiteSeries(1, {{MultiIndex{7}, -3.0}})) == doctest::Approx(3.0));
    CHECK(norm_l2_gamma(HermiteSeries(1, {{MultiIndex{0}, 1.0}, {MultiIndex{1}, 2.0}, {MultiIndex{2}, 2.0}})) ==
          doctest::Approx(3.0));

    CHECK(norm_sobolev(HermiteSeries(3, {{MultiIndex{0, 0, 0}, 1.0}}), 2.7) == doctest::Approx(1.0));
    CHECK(norm_sobolev(HermiteSeries(1, {{MultiIndex{1}, 1.0}}), 2.0) == doctest::Approx(2.0));
    CHECK(norm_sobolev(HermiteSeries(2, {{MultiIndex{1, 0}, 1.0}, {MultiIndex{0, 1}, 1.0}}), 2.0) ==
          doctest::Approx(std::sqrt(8.0)));
    CHECK_THROWS_AS((void)norm_sobolev(s, 0.0), InvalidArgument);
}
