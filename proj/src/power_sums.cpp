#include "hw/power_sums.hpp"

#include "hw/error.hpp"
#include "hw/summation.hpp"

#include <algorithm>
#include <cmath>

namespace hw {

namespace {

// Explicit summation stops here; beyond it Euler-Maclaurin takes over.
constexpr std::uint64_t kExplicitUpTo = 256;

void require_convergent(double s) {
    if (!(s > 1.0)) throw InvalidArgument("power series sum_j j^{-s} needs s > 1");
}

}  // namespace

CertifiedSum zeta_tail(double s, std::uint64_t m) {
    require_convergent(s);
    if (m < 1) throw InvalidArgument("zeta_tail needs m >= 1");
    const std::uint64_t start = std::max<std::uint64_t>(m, kExplicitUpTo);
    CompensatedSum acc;
    for (std::uint64_t j = m; j < start; ++j) acc.add(std::pow(static_cast<double>(j), -s));

    const double M = static_cast<double>(start);
    const double p = std::pow(M, -s);
    // f^{(n)}(M) = (-1)^n s (s+1) ... (s+n-1) M^{-s-n}
    const double r1 = s / M;
    const double r3 = r1 * (s + 1.0) * (s + 2.0) / (M * M);
    const double r5 = r3 * (s + 3.0) * (s + 4.0) / (M * M);
    const double r7 = r5 * (s + 5.0) * (s + 6.0) / (M * M);
    acc.add(M * p / (s - 1.0));
    acc.add(0.5 * p);
    acc.add(p * r1 / 12.0);
    acc.add(-p * r3 / 720.0);
    acc.add(p * r5 / 30240.0);
    const double remainder = p * r7 / 1209600.0;
    // plus one ulp-scale allowance per explicit term
    const double rounding = 1e-16 * acc.value() * 4.0;
    return {acc.value(), remainder + rounding};
}

CertifiedSum zeta(double s) {
    auto tail = zeta_tail(s, 2);
    tail.value += 1.0;
    return tail;
}

double power_partial_sum(double s, std::uint64_t n) {
    CompensatedSum acc;
    // smallest terms first
    for (std::uint64_t j = n; j >= 1; --j) acc.add(std::pow(static_cast<double>(j), -s));
    return acc.value();
}

CertifiedSum sixth_root_weighted_tail(double alpha, std::uint64_t m) {
    const double s = alpha + 1.0 / 6.0;
    require_convergent(s);
    if (m < 1) throw InvalidArgument("tail start must be >= 1");
    const std::uint64_t start = std::max<std::uint64_t>(m, 4096);
    auto f = [alpha](double x) { return std::pow(x, -1.0 / 6.0) * std::pow(1.0 + x, -alpha); };

    CompensatedSum acc;
    for (std::uint64_t k = m; k < start; ++k) acc.add(f(static_cast<double>(k)));

    const double M = static_cast<double>(start);
    // int_M^inf x^{-s} (1 + 1/x)^{-alpha} dx = sum_j binom(-alpha, j) M^{1-s-j} / (s+j-1)
    CompensatedSum integral;
    double coef = 1.0;
    for (int j = 0; j < 200; ++j) {
        const double term = coef * std::pow(M, 1.0 - s - j) / (s + j - 1.0);
        integral.add(term);
        if (std::abs(term) < 1e-22 * std::abs(integral.value())) break;
        coef *= -(alpha + j) / (j + 1.0);
    }
    const double fm = f(M);
    const double dfm = fm * (-1.0 / (6.0 * M) - alpha / (1.0 + M));
    acc.add(integral.value());
    acc.add(0.5 * fm);
    acc.add(-dfm / 12.0);
    // |f'''(M)| <= s (s+1) (s+2) M^{-3} f(M) for this completely monotone f
    const double remainder = s * (s + 1.0) * (s + 2.0) * fm / (M * M * M) / 720.0;
    return {acc.value(), remainder + 4e-16 * acc.value()};
}

}  // namespace hw
