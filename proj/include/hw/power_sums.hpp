#pragma once

#include <cstdint>

namespace hw {

/// A series value together with a certified bound on its truncation error.
struct CertifiedSum {
    double value = 0.0;
    double error_bound = 0.0;
};

/// sum_{j >= m} j^{-s} for s > 1 and m >= 1. The tail past the explicitly summed
/// range is the Euler-Maclaurin expansion with three Bernoulli corrections; for the
/// completely monotone summand the remainder is bounded by the first omitted term.
[[nodiscard]] CertifiedSum zeta_tail(double s, std::uint64_t m);

/// zeta(s) = sum_{j >= 1} j^{-s}, s > 1.
[[nodiscard]] CertifiedSum zeta(double s);

/// sum_{j=1}^{n} j^{-s} (finite, compensated).
[[nodiscard]] double power_partial_sum(double s, std::uint64_t n);

/// sum_{k >= m} k^{-1/6} (1 + k)^{-alpha}, alpha + 1/6 > 1, m >= 1.
[[nodiscard]] CertifiedSum sixth_root_weighted_tail(double alpha, std::uint64_t m);

}  // namespace hw
