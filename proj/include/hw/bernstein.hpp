#pragma once

// Lower-bound side of the L_inf^{sqrt g} embedding: the Mhaskar-Rakhmanov-Saff
// number, a randomized probe of the Nikol'skii-type inequality
//   ||phi sqrt(g)||_{L_2(R)} <= C a_m^{1/2} ||phi sqrt(g)||_{L_inf(R)},
// and a certified lower estimate of inf ||f||_{L_inf^{sqrt g}} / ||f||_{H^alpha}
// over span{H_k : k in Q_xi}.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hw {

/// a_m = sqrt(m), m >= 1.
[[nodiscard]] double mrs_number(std::uint64_t m);

struct WeightedNorms {
    double l2 = 0.0;    ///< ||phi sqrt(g)||_{L_2(R)}
    double linf = 0.0;  ///< grid max of |phi sqrt(g)|
    double ratio = 0.0;
};

/// Norms of phi = sum_k coeffs[k] H_k, computed as in nikolskii_check.
[[nodiscard]] WeightedNorms nikolskii_norms(std::span<const double> coeffs, double spacing = 0.01);

struct NikolskiiStats {
    int m = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double max_ratio = 0.0;    ///< max over trials of L_2 / L_inf
    double mean_ratio = 0.0;
    double min_ratio = 0.0;
    double grid_radius = 0.0;
    std::size_t grid_points = 0;
};

/// Random phi = sum_{k <= m} c_k H_k with c_k ~ N(0,1). The L_2 norm of phi sqrt(g)
/// uses the (m+1)-point Gauss rule, the L_inf norm a grid on [-(2 sqrt(m) + 6), 2 sqrt(m) + 6].
[[nodiscard]] NikolskiiStats nikolskii_check(int m, std::size_t trials, std::uint64_t seed = 0,
                                             double spacing = 0.01);

struct NikolskiiSweep {
    std::vector<NikolskiiStats> rows;
    /// least-squares slope of ln max_ratio against ln m
    double fitted_exponent = 0.0;
};

[[nodiscard]] NikolskiiSweep nikolskii_sweep(std::span<const int> degrees, std::size_t trials,
                                             std::uint64_t seed = 0, double spacing = 0.01);

struct BernsteinGrid {
    double spacing = 0.05;
    /// 0 selects 2 sqrt(2^xi) + 4, the MRS range of the largest degree 2^xi (plus a margin)
    double radius = 0.0;
    /// points drawn for d >= 3; 0 selects max(8 |Q_xi|, 20000), limited by the tensor grid
    std::size_t samples = 0;
    /// refuse to build M when |Q_xi| * points exceeds this
    double guard = 1e8;
};

struct BernsteinEstimate {
    double alpha = 0.0;
    int xi = 0;
    std::size_t d = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;             ///< |Q_xi|
    std::size_t grid_points = 0;
    double sigma_min = 0.0;
    /// sigma_min / sqrt(grid_points): every unit-norm f in the subspace has grid max >= this
    double estimate = 0.0;
    /// grid max of the singular vector of sigma_min; >= the grid infimum, >= estimate
    double raw_estimate = 0.0;
    double predicted_shape = 0.0;  ///< 2^{-alpha xi / 2 - d xi / 4}
};

/// M[x, k] = H_k(x) sqrt(g(x)) rho_{alpha,k}^{-1/2} over the grid. The grid is the
/// full tensor grid for d <= 2 and a seeded, randomly shifted Halton sample of it for
/// d >= 3. Throws ResourceLimit past the guard and InvalidArgument if the grid has
/// fewer points than |Q_xi|.
[[nodiscard]] BernsteinEstimate bernstein_lower_estimate(double alpha, int xi, std::size_t d,
                                                         const BernsteinGrid& grid = {},
                                                         std::uint64_t seed = 0);

}  // namespace hw
