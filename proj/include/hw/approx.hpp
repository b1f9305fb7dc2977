#pragma once

// Hyperbolic-cross truncation A_xi f = sum_{k in Q_xi} f^(k) H_k and its errors in
// L_2(gamma) (exact, via Parseval) and L_inf^{sqrt g} (grid maximum, a lower bound
// on the true sup), with the analytic tail sums and the embedding constant of
// H^alpha into L_inf^{sqrt g}.

#include "hw/hermite.hpp"
#include "hw/power_sums.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hw {

/// Uniform tensor grid [-R, R]^d for sup-norm estimates.
struct GridSpec {
    double spacing = 0.02;
    /// R; 0 selects 2 sqrt(K) + 6 for the largest coordinate degree K of the series.
    double radius = 0.0;
    /// spacings above this are rejected
    double max_spacing = 0.1;
    /// upper limit on grid points times series terms
    double work_cap = 2e10;
};

/// Smallest radius accepted for a series of coordinate degree up to K: sqrt(2K) + 6.
[[nodiscard]] double minimum_grid_radius(int max_degree) noexcept;
/// Radius used when GridSpec::radius is 0: 2 sqrt(K) + 6, past the turning point of H_K sqrt(g_1).
[[nodiscard]] double default_grid_radius(int max_degree) noexcept;
/// Grid nodes -R, -R + h, ..., R (R included).
[[nodiscard]] std::vector<double> grid_nodes(double radius, double spacing);

[[nodiscard]] HermiteSeries truncate(const HermiteSeries& s, int xi);
/// f - A_xi f.
[[nodiscard]] HermiteSeries truncation_tail(const HermiteSeries& s, int xi);

/// ||f - A_xi f||_{L_2(gamma)} = sqrt(sum_{k not in Q_xi} |f^(k)|^2).
[[nodiscard]] double l2_error(const HermiteSeries& s, int xi);

/// max over the grid of |(f - A_xi f)(x) sqrt(g(x))|.
[[nodiscard]] double linf_sqrtg_error(const HermiteSeries& s, int xi, const GridSpec& grid = {});

/// linf_sqrtg_error for several xi in one sweep over the grid.
[[nodiscard]] std::vector<double> linf_sqrtg_errors(const HermiteSeries& s,
                                                    const std::vector<int>& xis,
                                                    const GridSpec& grid = {});

/// max over the grid of |f(x) sqrt(g(x))|.
[[nodiscard]] double linf_sqrtg_norm(const HermiteSeries& s, const GridSpec& grid = {});

/// sum_{k in N_0^d \ Q_xi} prod_j (1 + k_j)^{-sigma}, sigma > 1, as a sum of
/// positive terms over cross levels (no cancellation against the full sum).
[[nodiscard]] CertifiedSum cross_complement_power_sum(double sigma, int xi, std::size_t d);

struct TailMajorant {
    double exact_sum = 0.0;    ///< sum_{k not in Q_xi} prod (1+k_j)^{-(alpha + 1/6)}
    double error_bound = 0.0;  ///< certified bound on the truncation error of exact_sum
    double bound_shape = 0.0;  ///< 2^{xi (1 - alpha - 1/6)} xi^{d-1}
};

[[nodiscard]] TailMajorant tail_majorant(double alpha, int xi, std::size_t d);

/// C(alpha, d) = (sum_{k >= 0} min(1, pi k^{-1/6}) (1+k)^{-alpha})^{d/2}, so that
/// ||f||_{L_inf^{sqrt g}} <= C(alpha, d) ||f||_{H^alpha}. Requires alpha > 5/6.
[[nodiscard]] double embedding_constant(double alpha, std::size_t d);

/// Product-form coefficients f^(k) = prod_j (1 + k_j)^{-tau}.
struct PowerLawRule {
    double tau = 1.0;

    /// tau = alpha/2 + 1/2 + eps: f lies in H^alpha for every eps > 0 but in no
    /// H^{alpha + 2 eps}, so it realizes the worst-case rate up to eps.
    [[nodiscard]] static PowerLawRule near_boundary(double alpha, double eps = 0.05);

    [[nodiscard]] double coefficient(const MultiIndex& k) const;
    /// The rule restricted to Q_xi as a finite series.
    [[nodiscard]] HermiteSeries on_cross(int xi, std::size_t d) const;
};

struct ConvergenceRow {
    int xi = 0;
    std::uint64_t rank = 0;           ///< |Q_xi|
    double l2_error = 0.0;
    double linf_sqrtg_error = 0.0;    ///< grid maximum (lower bound)
    double tail_sobolev_norm = 0.0;   ///< ||f - A_xi f||_{H^alpha}
    double linf_bound = 0.0;          ///< C(alpha,d) * tail_sobolev_norm
    double l2_shape = 0.0;            ///< n^{-alpha/2} (ln n)^{(d-1) alpha/2}
    double linf_shape = 0.0;          ///< n^{-alpha/2 - 1/12 + 1/2} (ln n)^{(d-1)(alpha/2 + 1/12)}
};

struct ConvergenceStudy {
    double alpha = 0.0;
    std::size_t d = 0;
    std::vector<ConvergenceRow> rows;
    /// least-squares slope of ln l2_error against ln rank (rows with positive error)
    double fitted_l2_slope = 0.0;
    /// same after dividing by the predicted log factor xi^{(d-1)(sigma+1)/2}
    double log_corrected_l2_slope = 0.0;
    /// highest cross level whose coefficients enter the L_inf evaluation
    int linf_support_xi = 0;
};

/// Power-law series: L_2 errors and Sobolev tails exact through the cross-level sums;
/// the L_inf^{sqrt g} column evaluates the series truncated to Q_{linf_support_xi}
/// (default xi_max + 1). Throws InvalidArgument when f is not in H^alpha.
[[nodiscard]] ConvergenceStudy convergence_study(const PowerLawRule& rule, double alpha,
                                                 std::size_t d, int xi_min, int xi_max,
                                                 const GridSpec& grid = {},
                                                 int linf_support_xi = -1);

/// Finite series: every column is computed directly from the coefficients.
[[nodiscard]] ConvergenceStudy convergence_study(const HermiteSeries& s, double alpha, int xi_min,
                                                 int xi_max, const GridSpec& grid = {});

}  // namespace hw
