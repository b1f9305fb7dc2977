#include "hw/hermite.hpp"

#include "hw/error.hpp"
#include "hw/indexsets.hpp"
#include "hw/summation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hw {

namespace {

constexpr double kRescaleAbove = 1e150;
const double kLogRescale = std::log(1e150);
// Below this value of x^2/4 the weight e^{-x^2/4} is a normal double and can seed
// the recurrence directly; above it the log-scaled path is used.
constexpr double kDirectWeightLimit = 500.0;

// log sqrt(g_1(x)) = -x^2/4 - ln(2 pi)/4
double log_sqrt_g1(double x) {
    return -0.25 * x * x - 0.25 * std::log(2.0 * std::numbers::pi);
}

double scaled_to_double(double mantissa, double log_scale) {
    if (mantissa == 0.0) return 0.0;
    const double mag = std::log(std::abs(mantissa)) + log_scale;
    return std::copysign(std::exp(mag), mantissa);
}

// sqrt(j) and 1/sqrt(j+1) for j < n, cached per thread
struct RootTable {
    std::vector<double> root;
    std::vector<double> inv_next;
};

const RootTable& roots(int n) {
    thread_local RootTable t;
    const auto need = static_cast<std::size_t>(n);
    if (t.root.size() < need) {
        const std::size_t from = t.root.size();
        const std::size_t size = std::max(need, 2 * from);
        t.root.resize(size);
        t.inv_next.resize(size);
        for (std::size_t j = from; j < size; ++j) {
            t.root[j] = std::sqrt(static_cast<double>(j));
            t.inv_next[j] = 1.0 / std::sqrt(static_cast<double>(j) + 1.0);
        }
    }
    return t;
}

// Runs the recurrence to degree k, returning (h_k, h_{k-1}) with a shared log-scale
// such that H_j(x) = h_j * exp(log_scale).
struct ScaledPair {
    double cur;
    double prev;
    double log_scale;
};

ScaledPair scaled_recurrence(int k, double x, double log_scale) {
    const auto& r = roots(k);
    double prev = 0.0;
    double cur = 1.0;
    for (int j = 0; j < k; ++j) {
        const double next = (x * cur - r.root[j] * prev) * r.inv_next[j];
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescaleAbove) {
            cur /= kRescaleAbove;
            prev /= kRescaleAbove;
            log_scale += kLogRescale;
        }
    }
    return {cur, prev, log_scale};
}

void require_degree(int k) {
    if (k < 0) throw InvalidArgument("Hermite degree must be nonnegative");
}

}  // namespace

double gaussian_density(std::span<const double> x) {
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    const double d = static_cast<double>(x.size());
    return std::pow(2.0 * std::numbers::pi, -0.5 * d) * std::exp(-0.5 * r2);
}

double hermite_eval(int k, double x) {
    require_degree(k);
    const auto& r = roots(k);
    double prev = 0.0;
    double cur = 1.0;
    for (int j = 0; j < k; ++j) {
        const double next = (x * cur - r.root[j] * prev) * r.inv_next[j];
        prev = cur;
        cur = next;
    }
    return cur;
}

double hermite_eval_weighted(int k, double x) {
    require_degree(k);
    if (0.25 * x * x < kDirectWeightLimit) {
        // sqrt(g_1) folded into H_0; every later term stays below ~1.1 in magnitude
        const auto& r = roots(k);
        double prev = 0.0;
        double cur = std::exp(log_sqrt_g1(x));
        for (int j = 0; j < k; ++j) {
            const double next = (x * cur - r.root[j] * prev) * r.inv_next[j];
            prev = cur;
            cur = next;
        }
        return cur;
    }
    const auto r = scaled_recurrence(k, x, log_sqrt_g1(x));
    return scaled_to_double(r.cur, r.log_scale);
}

std::vector<double> hermite_all(int kmax, double x) {
    require_degree(kmax);
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
    const auto& r = roots(kmax);
    out[0] = 1.0;
    if (kmax >= 1) out[1] = x;
    for (int j = 1; j < kmax; ++j) out[j + 1] = (x * out[j] - r.root[j] * out[j - 1]) * r.inv_next[j];
    return out;
}

std::vector<double> hermite_all_weighted(int kmax, double x) {
    require_degree(kmax);
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
    const auto& r = roots(kmax);
    if (0.25 * x * x < kDirectWeightLimit) {
        out[0] = std::exp(log_sqrt_g1(x));
        if (kmax >= 1) out[1] = x * out[0];
        for (int j = 1; j < kmax; ++j)
            out[j + 1] = (x * out[j] - r.root[j] * out[j - 1]) * r.inv_next[j];
        return out;
    }
    // value = (cur / 1e150) * factor with factor = exp(log_scale + ln 1e150); since
    // |cur| <= 1e150 a zero factor means the value itself is below the double range
    double log_scale = log_sqrt_g1(x);
    double factor = std::exp(log_scale + kLogRescale);
    double prev = 0.0;
    double cur = 1.0;
    out[0] = scaled_to_double(cur, log_scale);
    for (int j = 0; j < kmax; ++j) {
        const double next = (x * cur - r.root[j] * prev) * r.inv_next[j];
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescaleAbove) {
            cur /= kRescaleAbove;
            prev /= kRescaleAbove;
            log_scale += kLogRescale;
            factor = std::exp(log_scale + kLogRescale);
        }
        out[j + 1] = (cur / kRescaleAbove) * factor;
    }
    return out;
}

double tensor_eval(const MultiIndex& k, std::span<const double> x) {
    if (k.size() != x.size())
        throw DimensionMismatch("multi-index length " + std::to_string(k.size()) +
                                " != point dimension " + std::to_string(x.size()));
    double out = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) out *= hermite_eval(k[j], x[j]);
    return out;
}

double tensor_eval_weighted(const MultiIndex& k, std::span<const double> x) {
    if (k.size() != x.size())
        throw DimensionMismatch("multi-index length " + std::to_string(k.size()) +
                                " != point dimension " + std::to_string(x.size()));
    double out = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) out *= hermite_eval_weighted(k[j], x[j]);
    return out;
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
    CompensatedSum acc;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc.add(weights[i] * f(nodes[i]));
    return acc.value();
}

QuadratureRule gauss_hermite_rule(int m) {
    if (m < 1) throw InvalidArgument("quadrature rule needs m >= 1 nodes");
    const auto n = static_cast<Eigen::Index>(m);
    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    if (m == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 1.0;
        return rule;
    }

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (Eigen::Index j = 0; j < n - 1; ++j) sub(j) = std::sqrt(static_cast<double>(j + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw Error("numerical", "Jacobi eigensolver failed");

    const double sqrt_m = std::sqrt(static_cast<double>(m));
    for (int i = 0; i < m; ++i) {
        double x = eig.eigenvalues()(i);
        // H_m' = sqrt(m) H_{m-1}; the ratio is independent of the shared scale.
        for (int it = 0; it < 3; ++it) {
            const auto r = scaled_recurrence(m, x, 0.0);
            if (r.prev == 0.0) break;
            x -= r.cur / (sqrt_m * r.prev);
        }
        rule.nodes[i] = x;
    }
    for (int i = 0; i < m / 2; ++i) {
        const double h = 0.5 * (rule.nodes[m - 1 - i] - rule.nodes[i]);
        rule.nodes[i] = -h;
        rule.nodes[m - 1 - i] = h;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;

    // Christoffel numbers: w_i = 1 / sum_{k<m} H_k(x_i)^2, with sum_k H_k^2 written as
    // sqrt(2 pi) e^{x^2/2} sum_k (H_k sqrt(g_1))^2 so nothing overflows.
    for (int i = 0; i < m; ++i) {
        const double x = rule.nodes[i];
        const auto w = hermite_all_weighted(m - 1, x);
        CompensatedSum s;
        for (double v : w) s.add(v * v);
        rule.weights[i] =
            std::exp(-0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(s.value()));
    }
    for (int i = 0; i < m / 2; ++i) {
        const double w = 0.5 * (rule.weights[i] + rule.weights[m - 1 - i]);
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    return rule;
}

HermiteSeries::HermiteSeries(std::size_t d) : d_(d) {
    if (d == 0) throw InvalidArgument("series dimension must be >= 1");
}

HermiteSeries::HermiteSeries(std::size_t d, std::map<MultiIndex, double> coeffs) : d_(d) {
    if (d == 0) throw InvalidArgument("series dimension must be >= 1");
    for (auto& [k, c] : coeffs) set(k, c);
}

double HermiteSeries::coefficient(const MultiIndex& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? 0.0 : it->second;
}

void HermiteSeries::set(const MultiIndex& k, double value) {
    if (k.size() != d_)
        throw DimensionMismatch("coefficient index " + k.to_string() +
                                " does not match series dimension " + std::to_string(d_));
    if (!std::isfinite(value))
        throw InvalidArgument("coefficient at " + k.to_string() + " is not finite");
    coeffs_[k] = value;
}

IndexSet HermiteSeries::support() const {
    std::vector<MultiIndex> keys;
    keys.reserve(coeffs_.size());
    for (const auto& [k, c] : coeffs_) keys.push_back(k);
    return IndexSet(d_, std::move(keys));
}

int HermiteSeries::max_degree() const noexcept {
    int m = 0;
    for (const auto& [k, c] : coeffs_) m = std::max(m, k.max_entry());
    return m;
}

namespace {

double eval_with_tables(const std::map<MultiIndex, double>& coeffs,
                        const std::vector<std::vector<double>>& tables) {
    CompensatedSum acc;
    for (const auto& [k, c] : coeffs) {
        double term = c;
        for (std::size_t j = 0; j < tables.size(); ++j) term *= tables[j][k[j]];
        acc.add(term);
    }
    return acc.value();
}

}  // namespace

double HermiteSeries::operator()(std::span<const double> x) const {
    if (x.size() != d_) throw DimensionMismatch("evaluation point has wrong dimension");
    if (coeffs_.empty()) return 0.0;
    const int kmax = max_degree();
    std::vector<std::vector<double>> tables;
    for (double xj : x) tables.push_back(hermite_all(kmax, xj));
    return eval_with_tables(coeffs_, tables);
}

double HermiteSeries::weighted(std::span<const double> x) const {
    if (x.size() != d_) throw DimensionMismatch("evaluation point has wrong dimension");
    if (coeffs_.empty()) return 0.0;
    const int kmax = max_degree();
    std::vector<std::vector<double>> tables;
    for (double xj : x) tables.push_back(hermite_all_weighted(kmax, xj));
    return eval_with_tables(coeffs_, tables);
}

double series_eval(const HermiteSeries& s, std::span<const double> x) { return s(x); }

HermiteSeries hermite_transform(const Function& f, std::size_t arity, const IndexSet& indices,
                                int m) {
    if (indices.empty()) throw InvalidArgument("hermite_transform needs a nonempty index set");
    if (arity != indices.dimension())
        throw DimensionMismatch("function arity " + std::to_string(arity) +
                                " != index dimension " + std::to_string(indices.dimension()));
    const auto rule = gauss_hermite_rule(m);
    const std::size_t d = arity;
    const double points = std::pow(static_cast<double>(m), static_cast<double>(d));
    if (points * static_cast<double>(indices.size()) > 1e10)
        throw ResourceLimit("tensor quadrature too large: m^d * |indices| > 1e10");

    const int kmax = indices.max_coordinate();
    // table[i][k] = H_k(node_i)
    std::vector<std::vector<double>> table;
    table.reserve(rule.size());
    for (double x : rule.nodes) table.push_back(hermite_all(kmax, x));

    std::vector<CompensatedSum> acc(indices.size());
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    const auto total = static_cast<std::size_t>(points);
    for (std::size_t p = 0; p < total; ++p) {
        double w = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = rule.nodes[idx[j]];
            w *= rule.weights[idx[j]];
        }
        const double wf = w * f(x);
        for (std::size_t t = 0; t < indices.size(); ++t) {
            const auto& k = indices[t];
            double v = wf;
            for (std::size_t j = 0; j < d; ++j) v *= table[idx[j]][k[j]];
            acc[t].add(v);
        }
        for (std::size_t j = d; j-- > 0;) {
            if (++idx[j] < rule.size()) break;
            idx[j] = 0;
        }
    }

    HermiteSeries out(d);
    for (std::size_t t = 0; t < indices.size(); ++t) out.set(indices[t], acc[t].value());
    return out;
}

double norm_l2_gamma(const HermiteSeries& s) {
    CompensatedSum acc;
    for (const auto& [k, c] : s.coefficients()) acc.add(c * c);
    return std::sqrt(acc.value());
}

double norm_sobolev(const HermiteSeries& s, double alpha) {
    if (!(alpha > 0.0)) throw InvalidArgument("Sobolev smoothness alpha must be > 0");
    CompensatedSum acc;
    for (const auto& [k, c] : s.coefficients()) acc.add(rho(k, alpha) * c * c);
    return std::sqrt(acc.value());
}

}  // namespace hw
