#pragma once

// Normalized probabilists' Hermite polynomials
//   H_k(x) = (-1)^k / sqrt(k!) e^{x^2/2} d^k/dx^k e^{-x^2/2},
// an orthonormal basis of L_2(R^d, gamma) for the standard Gaussian measure
// gamma, together with Gauss-Hermite quadrature and finite Hermite series.

#include "hw/multi_index.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace hw {

/// g(x) = (2 pi)^{-d/2} exp(-|x|^2 / 2).
[[nodiscard]] double gaussian_density(std::span<const double> x);

/// H_k(x) by the three-term recurrence sqrt(k+1) H_{k+1} = x H_k - sqrt(k) H_{k-1}.
[[nodiscard]] double hermite_eval(int k, double x);

/// H_k(x) sqrt(g_1(x)). The Gaussian factor is carried through the recurrence as a
/// running log-scale, so the value is finite for any k and x (H_k alone overflows).
[[nodiscard]] double hermite_eval_weighted(int k, double x);

/// H_0(x) .. H_kmax(x) in one pass.
[[nodiscard]] std::vector<double> hermite_all(int kmax, double x);

/// H_0(x) sqrt(g_1(x)) .. H_kmax(x) sqrt(g_1(x)) in one pass.
[[nodiscard]] std::vector<double> hermite_all_weighted(int kmax, double x);

/// H_k(x) = prod_j H_{k_j}(x_j).
[[nodiscard]] double tensor_eval(const MultiIndex& k, std::span<const double> x);

/// H_k(x) sqrt(g(x)).
[[nodiscard]] double tensor_eval_weighted(const MultiIndex& k, std::span<const double> x);

/// m-point Gauss rule for dgamma on R: sum_i w_i p(x_i) = int p dgamma for deg p <= 2m-1.
struct QuadratureRule {
    std::vector<double> nodes;    ///< strictly increasing, symmetric about 0
    std::vector<double> weights;  ///< positive, summing to 1

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
    [[nodiscard]] double integrate(const std::function<double(double)>& f) const;
};

/// Nodes from the eigenvalues of the Jacobi matrix (off-diagonal sqrt(1..m-1)),
/// polished by Newton on H_m; weights from the Christoffel numbers 1 / sum_k H_k(x_i)^2.
[[nodiscard]] QuadratureRule gauss_hermite_rule(int m);

/// Finite Hermite expansion sum_k c_k H_k on R^d.
class HermiteSeries {
public:
    explicit HermiteSeries(std::size_t d);
    HermiteSeries(std::size_t d, std::map<MultiIndex, double> coeffs);

    [[nodiscard]] std::size_t dimension() const noexcept { return d_; }
    [[nodiscard]] const std::map<MultiIndex, double>& coefficients() const noexcept {
        return coeffs_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] bool empty() const noexcept { return coeffs_.empty(); }

    /// Coefficient at k, zero when k is outside the support.
    [[nodiscard]] double coefficient(const MultiIndex& k) const;
    /// Sets a coefficient; throws on a wrong length or a non-finite value.
    void set(const MultiIndex& k, double value);

    [[nodiscard]] IndexSet support() const;
    /// Largest single coordinate degree in the support.
    [[nodiscard]] int max_degree() const noexcept;

    [[nodiscard]] double operator()(std::span<const double> x) const;
    /// f(x) sqrt(g(x)).
    [[nodiscard]] double weighted(std::span<const double> x) const;

private:
    std::size_t d_;
    std::map<MultiIndex, double> coeffs_;
};

[[nodiscard]] double series_eval(const HermiteSeries& s, std::span<const double> x);

using Function = std::function<double(std::span<const double>)>;

/// f^(k) = int f H_k dgamma for every k in indices, by the m^d-point tensor Gauss rule.
/// Exact (to rounding) when f is a polynomial of per-coordinate degree p with
/// p + max_j k_j <= 2m - 1; otherwise the caller must choose m large enough.
[[nodiscard]] HermiteSeries hermite_transform(const Function& f, std::size_t arity,
                                              const IndexSet& indices, int m);

/// sqrt(sum_k |c_k|^2), the L_2(gamma) norm by Parseval.
[[nodiscard]] double norm_l2_gamma(const HermiteSeries& s);

/// (sum_k rho_{alpha,k} |c_k|^2)^{1/2}.
[[nodiscard]] double norm_sobolev(const HermiteSeries& s, double alpha);

}  // namespace hw
