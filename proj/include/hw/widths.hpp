#pragma once

// s-numbers of the embedding H^alpha -> L_2(R^d, gamma). In this Hilbert setting
// every s-number equals the non-increasing rearrangement of (prod_j (k_j+1))^{-alpha/2}
// over k in N_0^d, which is computed here exactly from integer products.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hw {

inline constexpr std::uint64_t kDefaultEnumerationCap = 50'000'000;

struct WidthSequence {
    double alpha = 0.0;
    std::size_t d = 0;
    /// products[n] = prod_j (k_j+1) of the (n+1)-th term, non-decreasing
    std::vector<std::uint64_t> products;
    /// values[n] = s_{n+1} = products[n]^{-alpha/2}, non-increasing, values[0] = 1
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    /// 1-based access matching the usual s_n notation.
    [[nodiscard]] double s(std::size_t n) const { return values.at(n - 1); }
};

/// First n_max terms of the rearranged sequence. Enumerates the level set
/// {prod (k_j+1) <= r} for the smallest r with c(r,d) >= n_max; throws ResourceLimit
/// when c(r,d) exceeds `cap`.
[[nodiscard]] WidthSequence exact_widths(double alpha, std::size_t d, std::size_t n_max,
                                         std::uint64_t cap = kDefaultEnumerationCap);

/// The n-th smallest index product, i.e. the least r with c(r,d) >= n.
[[nodiscard]] std::uint64_t nth_product(std::uint64_t n, std::size_t d);

struct WidthAtCount {
    double value;         ///< r^{-alpha/2}
    std::uint64_t index;  ///< c(r,d), the 1-based position where the value is attained
};

/// s_{c(r,d)} = r^{-alpha/2}.
[[nodiscard]] WidthAtCount width_at_count(std::uint64_t r, double alpha, std::size_t d);

/// (1/(d-1)!)^{alpha/2}, the limit of asymptotic_ratio as n -> infinity.
[[nodiscard]] double asymptotic_limit(double alpha, std::size_t d);

/// s_n / (n^{-alpha/2} (ln n)^{alpha (d-1)/2}), n >= 2.
[[nodiscard]] double asymptotic_ratio(double alpha, std::size_t d, std::uint64_t n);

/// The six s-number families: approximation (a), Bernstein (b), Gelfand (c),
/// Kolmogorov (d), entropy (e) and Weyl (x) numbers.
enum class SNumberKind : char {
    approximation = 'a',
    bernstein = 'b',
    gelfand = 'c',
    kolmogorov = 'd',
    entropy = 'e',
    weyl = 'x',
};

[[nodiscard]] SNumberKind parse_kind(const std::string& letter);
[[nodiscard]] char kind_letter(SNumberKind kind) noexcept;

/// Rate n^{-a} (log n)^b.
struct RateExponent {
    double a = 0.0;
    double b = 0.0;
    friend bool operator==(const RateExponent&, const RateExponent&) = default;
};

/// Asymptotic order of s_n(I_gamma : W^alpha_p(R^d, gamma) -> L_q(R^d, gamma)).
///
/// Covered: 1 <= q < p < inf (kinds a, c, d, e give (alpha, (d-1) alpha); kinds x, b give
/// (beta, (d-1) beta) with beta from the four-case table; for q = 1 only a, d, e, x) and
/// p = q = 2 (all kinds, (alpha/2, (d-1) alpha/2)). Everything else, including alpha exactly
/// on a beta threshold, throws RegimeNotCovered.
[[nodiscard]] RateExponent rate_exponent(SNumberKind kind, double p, double q, double alpha,
                                         std::size_t d);

struct LinfExponentBounds {
    RateExponent lower;  ///< n^{-(alpha/2 + d/4)} (log n)^{(alpha/2 + d/4)(d-1)}
    RateExponent upper;  ///< n^{-(alpha/2 + 1/12 - 1/2)} (log n)^{(alpha/2 + 1/12)(d-1)}
};

/// Two-sided exponents for H^alpha -> L_inf^{sqrt g}; requires alpha > 5/6.
[[nodiscard]] LinfExponentBounds linf_exponent_bounds(double alpha, std::size_t d);

/// In the Hilbert case a = b = c = d = x coincide with the single rearranged
/// sequence, and the entropy numbers are pinned between b_n / (2 sqrt 2) and a_n.
struct HilbertCoincidenceReport {
    WidthSequence sequence;
    bool non_increasing = false;
    /// b_n <= min(c_n, d_n), e_n <= a_n and b_n <= 2 sqrt(2) e_n, each checked with
    /// the common sequence substituted (so they hold with equality where applicable).
    bool orderings_hold = false;
    std::vector<std::string> relations;
    double bernstein_entropy_constant = 0.0;  ///< 2 sqrt 2
    /// entropy sandwich per n: [s_n / (2 sqrt 2), s_n]; documented, not computed
    std::vector<double> entropy_lower;
    std::vector<double> entropy_upper;
};

[[nodiscard]] HilbertCoincidenceReport hilbert_coincidence_check(double alpha, std::size_t d,
                                                                 std::size_t n_max);

}  // namespace hw
