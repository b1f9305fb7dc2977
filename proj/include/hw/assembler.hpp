#pragma once

// Assembling a global s-number bound from local ones on the shifted cubes
// I_{theta,k} = k + [-theta/2, theta/2]^d, k in Z^d: the decay parameter delta,
// the radius xi_n, the rank budget n_k, the cube weight bounds and a concrete
// smooth partition of unity.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hw {

/// delta = (1/(2q) - 1/(2p)) / 2 for 1 <= q < p < inf and theta > 1.
[[nodiscard]] double choose_delta(double p, double q, double theta);

/// Checks that E(k) + delta |k|^2 is bounded on the grid |k|_inf <= kmax, where
/// E(k) = ln(||A_k|| ||B_k||): the supremum must be attained strictly inside the grid
/// and the boundary shell must sit below it.
struct DecayVerification {
    double log_constant = 0.0;     ///< max over the grid of E(k) + delta |k|^2
    int argmax_inf_norm = 0;       ///< |k|_inf at the maximizer
    double boundary_max = 0.0;     ///< max over the shell |k|_inf = kmax
    bool bounded = false;
};

[[nodiscard]] DecayVerification verify_weight_decay(double p, double q, double theta,
                                                    double delta, std::size_t d, int kmax = 50);

/// xi_n = sqrt(2 a ln(n) / delta).
[[nodiscard]] double xi_threshold(std::uint64_t n, double delta, double a);

/// Allocation of the budget n over the cubes k with |k| < xi_n:
/// n_k = floor(varrho n exp(-delta |k|^2 / (2a))), varrho = 2^{-d} (1 - e^{-delta/(2a)})^d.
class BudgetPlan {
public:
    [[nodiscard]] std::uint64_t n() const noexcept { return n_; }
    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }
    [[nodiscard]] std::size_t d() const noexcept { return d_; }
    [[nodiscard]] double xi_n() const noexcept { return xi_n_; }
    [[nodiscard]] double varrho() const noexcept { return varrho_; }

    [[nodiscard]] std::size_t size() const noexcept { return counts_.size(); }
    /// Signed cube index of the i-th allocation (lexicographic order).
    [[nodiscard]] std::span<const int> k(std::size_t i) const noexcept {
        return {indices_.data() + i * d_, d_};
    }
    [[nodiscard]] std::uint64_t n_k(std::size_t i) const noexcept { return counts_[i]; }
    [[nodiscard]] std::uint64_t squared_norm(std::size_t i) const noexcept;
    /// sum_k n_k, exact.
    [[nodiscard]] std::uint64_t total() const noexcept;

private:
    friend BudgetPlan build_budget(std::uint64_t, double, double, std::size_t, std::uint64_t);

    std::uint64_t n_ = 0;
    double a_ = 0.0;
    double delta_ = 0.0;
    std::size_t d_ = 0;
    double xi_n_ = 0.0;
    double varrho_ = 0.0;
    std::vector<int> indices_;
    std::vector<std::uint64_t> counts_;
};

inline constexpr std::uint64_t kDefaultCubeCap = 50'000'000;

/// Throws ResourceLimit if more than `cap` cubes would be listed and Overflow if
/// varrho n does not fit the 64-bit range.
[[nodiscard]] BudgetPlan build_budget(std::uint64_t n, double a, double delta, std::size_t d,
                                      std::uint64_t cap = kDefaultCubeCap);

/// Norm bounds of the cube maps: ||A_k|| <= exp(|k + theta sign(k)/2|^2 / (2p)),
/// ||B_k|| <= exp(-|k - theta sign(k)/2|^2 / (2q)), with sign(0) = +1.
struct CubeWeights {
    std::vector<int> k;
    double p = 0.0;
    double q = 0.0;
    double theta = 0.0;
    double log_a = 0.0;
    double log_b = 0.0;

    [[nodiscard]] double a_norm_bound() const;
    [[nodiscard]] double b_norm_bound() const;
    [[nodiscard]] double log_product() const noexcept { return log_a + log_b; }
    [[nodiscard]] double product() const;
};

[[nodiscard]] CubeWeights cube_weights(std::span<const int> k, double p, double q, double theta);

/// phi_k(x) = prod_j eta(x_j - k_j) / sum_{m in Z} eta(x_j - m), where eta is the C^inf
/// bump equal to 1 on [-1/2, 1/2] and vanishing outside (-(1+theta)/4, (1+theta)/4),
/// a set strictly inside (-theta/2, theta/2). The plateau keeps the normalizer >= 1.
class PartitionOfUnity {
public:
    explicit PartitionOfUnity(double theta);

    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] double support_radius() const noexcept { return outer_; }

    [[nodiscard]] double bump(double t) const noexcept;
    /// psi(t) = eta(t) / sum_m eta(t - m), the one-dimensional factor of phi_0.
    [[nodiscard]] double factor(double t) const noexcept;
    [[nodiscard]] double operator()(std::span<const int> k, std::span<const double> x) const;

    /// ||phi_0||_{W^alpha_p(I^d_theta)} for integer alpha <= 4, by quadrature of
    /// finite-difference derivatives of the tensor factor.
    [[nodiscard]] double sobolev_norm(int alpha, double p, std::size_t d,
                                      std::size_t cells = 20000) const;

private:
    double theta_;
    double inner_ = 0.5;
    double outer_;
};

[[nodiscard]] PartitionOfUnity build_partition_of_unity(double theta);

/// Model of s_m(I_theta); m = 0 is evaluated as m = 1.
using BlockRate = std::function<double(std::uint64_t)>;

/// m^{-a} (1 + ln m)^b.
[[nodiscard]] BlockRate default_block_rate(double a, double b);

struct Envelope {
    double value = 0.0;
    double inner_sum = 0.0;   ///< sum_{|k| < xi_n} ||A_k|| ||B_k|| rate(n_k)
    double tail_sum = 0.0;    ///< sum_{xi_n <= |k| <= K_cut} ||A_k|| ||B_k||
    int k_cut = 0;            ///< |k|_inf of the last shell included
    double delta = 0.0;
    double xi_n = 0.0;
};

/// Numeric value of the assembled bound
///   sum_{|k| < xi_n} ||A_k|| ||B_k|| block_rate(n_k) + sum_{|k| >= xi_n} ||A_k|| ||B_k||;
/// the second sum is cut once a whole shell contributes less than 1e-12 of it.
[[nodiscard]] Envelope assemble_envelope(std::uint64_t n, double a, double b, double p, double q,
                                         double theta, std::size_t d,
                                         const BlockRate& block_rate = {});

/// sum_{j >= 0} x^j C(j+k, k) = (1-x)^{-k-1} for 0 < x < 1.
[[nodiscard]] double geometric_binomial_sum(double x, int k);

/// Partial sums of the same series: number of terms needed to come within tol of the
/// closed form, and the last partial sum.
struct GeometricBinomialCheck {
    std::size_t terms = 0;
    double partial_sum = 0.0;
    double closed_form = 0.0;
    bool converged = false;
};

[[nodiscard]] GeometricBinomialCheck geometric_binomial_check(double x, int k, double tol,
                                                              std::size_t max_terms = 1'000'000);

}  // namespace hw
