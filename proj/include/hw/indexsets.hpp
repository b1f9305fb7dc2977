#pragma once

// Multi-index combinatorics: the smoothness weights rho_{alpha,k}, the
// product level sets {k : prod (k_j+1) <= r} with their counting function
// c(r,d), dyadic blocks and hyperbolic crosses.

#include "hw/error.hpp"
#include "hw/multi_index.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace hw {

/// rho_{alpha,k} = prod_j (k_j + 1)^alpha.
[[nodiscard]] double rho(const MultiIndex& k, double alpha);

/// prod_j (k_j + 1) in exact integer arithmetic; throws Overflow past 2^63.
[[nodiscard]] std::uint64_t index_product(const MultiIndex& k);

namespace detail {

void require_dimension(std::size_t d);
std::uint64_t level_bound(double r);

template <class Visitor>
void level_set_recurse(std::vector<int>& k, std::size_t j, std::uint64_t bound,
                       std::uint64_t product, Visitor& visit) {
    if (j == k.size()) {
        visit(static_cast<const std::vector<int>&>(k), product);
        return;
    }
    // (k_j + 1) * rest <= bound  <=>  rest <= floor(bound / (k_j + 1))
    for (std::uint64_t f = 1; f <= bound; ++f) {
        k[j] = static_cast<int>(f - 1);
        level_set_recurse(k, j + 1, bound / f, product * f, visit);
    }
    k[j] = 0;
}

template <class Visitor>
void cross_recurse(std::vector<int>& k, std::size_t j, int budget, Visitor& visit) {
    if (j == k.size()) {
        visit(static_cast<const std::vector<int>&>(k));
        return;
    }
    // level 0 covers {0, 1}; level s >= 1 adds (2^{s-1}, 2^s].
    for (int v = 0; v <= 1; ++v) {
        k[j] = v;
        cross_recurse(k, j + 1, budget, visit);
    }
    for (int s = 1; s <= budget; ++s) {
        const int lo = (1 << (s - 1)) + 1;
        const int hi = 1 << s;
        for (int v = lo; v <= hi; ++v) {
            k[j] = v;
            cross_recurse(k, j + 1, budget - s, visit);
        }
    }
    k[j] = 0;
}

}  // namespace detail

/// Streams every k in N_0^d with prod (k_j+1) <= r to `visit(const std::vector<int>& k,
/// std::uint64_t product)` in lexicographic order without materializing the set.
template <class Visitor>
void for_each_in_level_set(double r, std::size_t d, Visitor&& visit) {
    detail::require_dimension(d);
    const std::uint64_t bound = detail::level_bound(r);
    std::vector<int> k(d, 0);
    detail::level_set_recurse(k, 0, bound, 1, visit);
}

[[nodiscard]] IndexSet level_set(double r, std::size_t d);

/// c(r, d) = |{k in N_0^d : prod (k_j+1) <= r}|, evaluated through
/// c(R, d) = sum_{f=1}^{R} c(floor(R/f), d-1) with R = floor(r). Blocks of f sharing
/// floor(R/f) are summed at once and subproblems are memoized per dimension, so
/// one instance answers repeated queries cheaply.
class CountingFunction {
public:
    explicit CountingFunction(std::size_t d);

    [[nodiscard]] std::size_t dimension() const noexcept { return d_; }
    [[nodiscard]] std::uint64_t operator()(double r);
    [[nodiscard]] std::uint64_t count(std::uint64_t bound) { return eval(bound, d_); }

private:
    std::uint64_t eval(std::uint64_t bound, std::size_t d);

    std::size_t d_;
    std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> memo_;
};

[[nodiscard]] std::uint64_t count_c(double r, std::size_t d);

struct CountBounds {
    double lower;
    double upper;
};

/// Two-sided asymptotic bounds for c(r, d), valid beyond an unspecified threshold r*:
///   r (ln r)^d / ((d-1)! (ln r + d))  <  c(r,d)  <
///   r (ln r + d ln 2)^d / ((d-1)! (ln r + d ln 2 + d - 1)).
[[nodiscard]] CountBounds chernov_dung_bounds(double r, std::size_t d);

/// Result of scanning integer r values for failures of the two-sided count bounds.
struct RStarProbe {
    std::size_t d = 0;
    std::vector<std::uint64_t> violations;  ///< every r where a bound failed
    [[nodiscard]] std::uint64_t empirical_r_star() const noexcept {
        return violations.empty() ? 1 : violations.back();
    }
};

[[nodiscard]] RStarProbe probe_r_star(const std::vector<std::uint64_t>& rs, std::size_t d);

/// delta(s) = prod_j [floor(2^{s_j - 1}), 2^{s_j}].
[[nodiscard]] IndexSet dyadic_block(const MultiIndex& s);

/// Smallest s >= 0 with k in [floor(2^{s-1}), 2^s]: 0 for k <= 1, ceil(log2 k) otherwise.
[[nodiscard]] int dyadic_level(int k) noexcept;

/// sum_j dyadic_level(k_j); k lies in Q_xi iff cross_level(k) <= xi.
[[nodiscard]] int cross_level(const MultiIndex& k) noexcept;

[[nodiscard]] inline bool in_hyperbolic_cross(const MultiIndex& k, int xi) noexcept {
    return cross_level(k) <= xi;
}

/// Streams the members of Q_xi (any order; lexicographic within the recursion).
template <class Visitor>
void for_each_in_hyperbolic_cross(int xi, std::size_t d, Visitor&& visit) {
    detail::require_dimension(d);
    if (xi < 0) throw InvalidArgument("xi must be nonnegative");
    if (xi > 30) throw ResourceLimit("xi > 30 exceeds the int coordinate range");
    std::vector<int> k(d, 0);
    detail::cross_recurse(k, 0, xi, visit);
}

/// Q_xi = union of dyadic_block(s) over |s|_1 <= xi.
[[nodiscard]] IndexSet hyperbolic_cross(int xi, std::size_t d);

/// |Q_xi| without materializing the set.
[[nodiscard]] std::uint64_t hyperbolic_cross_size(int xi, std::size_t d);

/// |Q_xi| / (2^xi xi^{d-1}); requires xi >= 1.
[[nodiscard]] double cross_cardinality_ratio(int xi, std::size_t d);

}  // namespace hw
