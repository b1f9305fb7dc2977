#include "hw/bernstein.hpp"

#include "hw/approx.hpp"
#include "hw/error.hpp"
#include "hw/fit.hpp"
#include "hw/hermite.hpp"
#include "hw/indexsets.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace hw {

double mrs_number(std::uint64_t m) {
    if (m == 0) throw InvalidArgument("mrs_number needs m >= 1");
    return std::sqrt(static_cast<double>(m));
}

namespace {

// rows: nodes, columns: H_0 sqrt(g_1) .. H_kmax sqrt(g_1)
Eigen::MatrixXd weighted_table(std::span<const double> nodes, int kmax) {
    Eigen::MatrixXd t(static_cast<Eigen::Index>(nodes.size()), kmax + 1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto row = hermite_all_weighted(kmax, nodes[i]);
        for (int k = 0; k <= kmax; ++k) t(static_cast<Eigen::Index>(i), k) = row[k];
    }
    return t;
}

}  // namespace

namespace {

struct BatchNorms {
    Eigen::VectorXd l2;
    Eigen::VectorXd linf;
    double grid_radius = 0.0;
    std::size_t grid_points = 0;
};

// columns of coeffs are Hermite coefficient vectors of degree <= m
BatchNorms batch_norms(const Eigen::MatrixXd& coeffs, double spacing) {
    if (!(spacing > 0.0)) throw InvalidArgument("grid spacing must be positive");
    const int m = static_cast<int>(coeffs.rows()) - 1;
    BatchNorms out;
    out.grid_radius = 2.0 * std::sqrt(static_cast<double>(std::max(m, 1))) + 6.0;
    const auto nodes = grid_nodes(out.grid_radius, spacing);
    out.grid_points = nodes.size();

    // ||phi sqrt(g)||_{L_2(dx)}^2 = int phi^2 dgamma, exact with m+1 nodes
    const auto rule = gauss_hermite_rule(m + 1);
    Eigen::MatrixXd at_nodes(static_cast<Eigen::Index>(rule.size()), m + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto row = hermite_all(m, rule.nodes[i]);
        for (int k = 0; k <= m; ++k) at_nodes(static_cast<Eigen::Index>(i), k) = row[k];
    }
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(
        rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
    const Eigen::MatrixXd phi_nodes = at_nodes * coeffs;
    const Eigen::MatrixXd phi_grid = weighted_table(nodes, m) * coeffs;

    out.l2.resize(coeffs.cols());
    out.linf.resize(coeffs.cols());
    for (Eigen::Index t = 0; t < coeffs.cols(); ++t) {
        out.l2(t) = std::sqrt(w.dot(phi_nodes.col(t).cwiseAbs2()));
        out.linf(t) = phi_grid.col(t).cwiseAbs().maxCoeff();
    }
    return out;
}

}  // namespace

WeightedNorms nikolskii_norms(std::span<const double> coeffs, double spacing) {
    if (coeffs.empty()) throw InvalidArgument("nikolskii_norms needs at least one coefficient");
    const Eigen::MatrixXd c = Eigen::Map<const Eigen::VectorXd>(
        coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
    const auto b = batch_norms(c, spacing);
    WeightedNorms out;
    out.l2 = b.l2(0);
    out.linf = b.linf(0);
    out.ratio = out.l2 / out.linf;
    return out;
}

NikolskiiStats nikolskii_check(int m, std::size_t trials, std::uint64_t seed, double spacing) {
    if (m < 1) throw InvalidArgument("nikolskii_check needs m >= 1");
    if (trials < 1) throw InvalidArgument("nikolskii_check needs trials >= 1");
    if (!(spacing > 0.0)) throw InvalidArgument("grid spacing must be positive");

    NikolskiiStats out;
    out.m = m;
    out.trials = trials;
    out.seed = seed;

    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(m)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd coeffs(m + 1, static_cast<Eigen::Index>(trials));
    for (Eigen::Index t = 0; t < coeffs.cols(); ++t)
        for (Eigen::Index k = 0; k <= m; ++k) coeffs(k, t) = normal(rng);

    const auto b = batch_norms(coeffs, spacing);
    out.grid_radius = b.grid_radius;
    out.grid_points = b.grid_points;
    double sum = 0.0;
    out.min_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < coeffs.cols(); ++t) {
        const double ratio = b.l2(t) / b.linf(t);
        out.max_ratio = std::max(out.max_ratio, ratio);
        out.min_ratio = std::min(out.min_ratio, ratio);
        sum += ratio;
    }
    out.mean_ratio = sum / static_cast<double>(trials);
    return out;
}

NikolskiiSweep nikolskii_sweep(std::span<const int> degrees, std::size_t trials, std::uint64_t seed,
                               double spacing) {
    NikolskiiSweep out;
    std::vector<double> lx, ly;
    for (int m : degrees) {
        out.rows.push_back(nikolskii_check(m, trials, seed, spacing));
        lx.push_back(std::log(static_cast<double>(m)));
        ly.push_back(std::log(out.rows.back().max_ratio));
    }
    out.fitted_exponent = fit_slope(lx, ly);
    return out;
}

namespace {

double radical_inverse(std::uint64_t i, std::uint64_t base) noexcept {
    double inv = 1.0 / static_cast<double>(base);
    double f = inv;
    double v = 0.0;
    while (i > 0) {
        v += static_cast<double>(i % base) * f;
        i /= base;
        f *= inv;
    }
    return v;
}

constexpr std::array<std::uint64_t, 24> kPrimes{2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                                41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

}  // namespace

BernsteinEstimate bernstein_lower_estimate(double alpha, int xi, std::size_t d,
                                           const BernsteinGrid& grid, std::uint64_t seed) {
    if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    if (xi < 0) throw InvalidArgument("xi must be nonnegative");
    if (d == 0) throw InvalidArgument("dimension d must be >= 1");
    if (d > kPrimes.size()) throw InvalidArgument("Halton sampling supports d <= 24");
    if (!(grid.spacing > 0.0)) throw InvalidArgument("grid spacing must be positive");

    BernsteinEstimate out;
    out.alpha = alpha;
    out.xi = xi;
    out.d = d;
    out.seed = seed;
    out.predicted_shape = std::exp2(-alpha * xi / 2.0 - static_cast<double>(d) * xi / 4.0);

    const double n_cols = static_cast<double>(hyperbolic_cross_size(xi, d));
    std::vector<int> cols;
    int kmax = 0;

    const double radius =
        grid.radius > 0.0 ? grid.radius : 2.0 * std::sqrt(std::exp2(static_cast<double>(xi))) + 4.0;
    const auto nodes = grid_nodes(radius, grid.spacing);
    const double per_axis = static_cast<double>(nodes.size());
    const double tensor = std::pow(per_axis, static_cast<double>(d));

    double rows_d;
    if (d <= 2) {
        rows_d = tensor;
    } else {
        const double wanted =
            grid.samples > 0 ? static_cast<double>(grid.samples) : std::max(8.0 * n_cols, 20000.0);
        rows_d = std::min(wanted, tensor);
    }
    if (rows_d * n_cols > grid.guard)
        throw ResourceLimit("Bernstein matrix would have " + std::to_string(rows_d * n_cols) +
                            " entries, above the guard");
    if (rows_d < n_cols)
        throw InvalidArgument("grid has fewer points than the subspace dimension");

    for_each_in_hyperbolic_cross(xi, d, [&](const std::vector<int>& k) {
        cols.insert(cols.end(), k.begin(), k.end());
        for (int v : k) kmax = std::max(kmax, v);
    });
    const auto n = cols.size() / d;
    out.n = n;

    Eigen::MatrixXd table = weighted_table(nodes, kmax);
    for (int k = 0; k <= kmax; ++k) table.col(k) *= std::pow(k + 1.0, -alpha / 2.0);

    // grid points as per-axis node indices
    const auto rows = static_cast<std::size_t>(rows_d);
    std::vector<std::size_t> idx(rows * d);
    if (d <= 2) {
        for (std::size_t r = 0; r < rows; ++r) {
            std::size_t rest = r;
            for (std::size_t j = d; j-- > 0;) {
                idx[r * d + j] = rest % nodes.size();
                rest /= nodes.size();
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> shift(d);
        for (auto& s : shift) s = unif(rng);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t j = 0; j < d; ++j) {
                double u = radical_inverse(r + 1, kPrimes[j]) + shift[j];
                u -= std::floor(u);
                idx[r * d + j] = std::min(nodes.size() - 1, static_cast<std::size_t>(u * per_axis));
            }
    }
    out.grid_points = rows;

    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double v = 1.0;
            for (std::size_t j = 0; j < d; ++j)
                v *= table(static_cast<Eigen::Index>(idx[r * d + j]), cols[c * d + j]);
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const Eigen::Index last = sv.size() - 1;
    out.sigma_min = sv(last);
    out.estimate = out.sigma_min / std::sqrt(static_cast<double>(rows));
    out.raw_estimate = (m * svd.matrixV().col(last)).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace hw
