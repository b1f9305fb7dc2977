#include "hw/widths.hpp"

#include "hw/error.hpp"
#include "hw/indexsets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hw {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidArgument("smoothness alpha must be a positive finite number");
}

std::uint64_t nth_product_with(CountingFunction& c, std::uint64_t n) {
    // c(r,d) >= r, so the answer lies in [1, n].
    std::uint64_t lo = 1;
    std::uint64_t hi = n;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (c.count(mid) >= n)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

bool on_threshold(double alpha, double threshold) {
    return std::abs(alpha - threshold) <= 1e-12 * std::max(1.0, std::abs(threshold));
}

std::string fmt_regime(double p, double q, double alpha) {
    return "p=" + std::to_string(p) + " q=" + std::to_string(q) +
           " alpha=" + std::to_string(alpha);
}

// beta for the Weyl and Bernstein numbers, 1 <= q < p < inf
double weyl_beta(double p, double q, double alpha) {
    if (p <= 2.0) return alpha;  // q < p <= 2
    if (q <= 2.0) {              // q <= 2 < p
        const double threshold = 1.0 / p;
        if (on_threshold(alpha, threshold))
            throw RegimeNotCovered("alpha = 1/p is a boundary case (" +
                                   fmt_regime(p, q, alpha) + ")");
        return alpha > threshold ? alpha - 1.0 / p + 0.5 : alpha * p / 2.0;
    }
    // 2 < q < p
    const double threshold = (1.0 / q - 1.0 / p) / (p / 2.0 - 1.0);
    if (on_threshold(alpha, threshold))
        throw RegimeNotCovered("alpha = (1/q - 1/p)/(p/2 - 1) is a boundary case (" +
                               fmt_regime(p, q, alpha) + ")");
    return alpha > threshold ? alpha - 1.0 / p + 1.0 / q : alpha * p / 2.0;
}

}  // namespace

std::uint64_t nth_product(std::uint64_t n, std::size_t d) {
    if (n < 1) throw InvalidArgument("width index n must be >= 1");
    CountingFunction c(d);
    return nth_product_with(c, n);
}

WidthSequence exact_widths(double alpha, std::size_t d, std::size_t n_max, std::uint64_t cap) {
    require_alpha(alpha);
    if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
    CountingFunction c(d);
    const std::uint64_t r = nth_product_with(c, n_max);
    const std::uint64_t total = c.count(r);
    if (total > cap)
        throw ResourceLimit("level set of size " + std::to_string(total) +
                            " exceeds enumeration cap " + std::to_string(cap));

    WidthSequence out{.alpha = alpha, .d = d, .products = {}, .values = {}};
    out.products.reserve(total);
    for_each_in_level_set(static_cast<double>(r), d,
                          [&](const std::vector<int>&, std::uint64_t p) { out.products.push_back(p); });
    std::sort(out.products.begin(), out.products.end());
    out.products.resize(n_max);
    out.values.resize(n_max);
    for (std::size_t i = 0; i < n_max; ++i)
        out.values[i] = std::pow(static_cast<double>(out.products[i]), -alpha / 2.0);
    return out;
}

WidthAtCount width_at_count(std::uint64_t r, double alpha, std::size_t d) {
    require_alpha(alpha);
    if (r < 1) throw InvalidArgument("r must be >= 1");
    return {std::pow(static_cast<double>(r), -alpha / 2.0), count_c(static_cast<double>(r), d)};
}

double asymptotic_limit(double alpha, std::size_t d) {
    require_alpha(alpha);
    if (d == 0) throw InvalidArgument("dimension d must be >= 1");
    return std::exp(-alpha / 2.0 * std::lgamma(static_cast<double>(d)));
}

double asymptotic_ratio(double alpha, std::size_t d, std::uint64_t n) {
    require_alpha(alpha);
    if (n < 2) throw InvalidArgument("asymptotic ratio requires n >= 2");
    const double r = static_cast<double>(nth_product(n, d));
    const double ln_n = std::log(static_cast<double>(n));
    const double log_ratio = -alpha / 2.0 * std::log(r) + alpha / 2.0 * ln_n -
                             alpha * (static_cast<double>(d) - 1.0) / 2.0 * std::log(ln_n);
    return std::exp(log_ratio);
}

SNumberKind parse_kind(const std::string& letter) {
    if (letter.size() == 1) {
        switch (letter[0]) {
            case 'a': return SNumberKind::approximation;
            case 'b': return SNumberKind::bernstein;
            case 'c': return SNumberKind::gelfand;
            case 'd': return SNumberKind::kolmogorov;
            case 'e': return SNumberKind::entropy;
            case 'x': return SNumberKind::weyl;
            default: break;
        }
    }
    throw InvalidArgument("unknown s-number kind '" + letter + "' (expected one of a,b,c,d,e,x)");
}

char kind_letter(SNumberKind kind) noexcept { return static_cast<char>(kind); }

RateExponent rate_exponent(SNumberKind kind, double p, double q, double alpha, std::size_t d) {
    if (d == 0) throw InvalidArgument("dimension d must be >= 1");
    if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(alpha))
        throw RegimeNotCovered("non-finite parameter (" + fmt_regime(p, q, alpha) + ")");
    if (!(alpha > 0.0)) throw RegimeNotCovered("alpha must be > 0");
    const double logs = static_cast<double>(d) - 1.0;

    if (p == 2.0 && q == 2.0) return {alpha / 2.0, logs * alpha / 2.0};
    if (!(q >= 1.0)) throw RegimeNotCovered("q < 1 (" + fmt_regime(p, q, alpha) + ")");
    if (!(q < p))
        throw RegimeNotCovered("p <= q is only covered for p = q = 2 (" + fmt_regime(p, q, alpha) +
                               ")");
    if (q == 1.0 && (kind == SNumberKind::bernstein || kind == SNumberKind::gelfand))
        throw RegimeNotCovered(std::string("kind ") + kind_letter(kind) +
                               " is not covered for q = 1");

    switch (kind) {
        case SNumberKind::approximation:
        case SNumberKind::gelfand:
        case SNumberKind::kolmogorov:
        case SNumberKind::entropy:
            return {alpha, logs * alpha};
        case SNumberKind::weyl:
        case SNumberKind::bernstein: {
            const double beta = weyl_beta(p, q, alpha);
            return {beta, logs * beta};
        }
    }
    throw InvalidArgument("unknown s-number kind");
}

LinfExponentBounds linf_exponent_bounds(double alpha, std::size_t d) {
    if (d == 0) throw InvalidArgument("dimension d must be >= 1");
    if (!(alpha > 5.0 / 6.0) || on_threshold(alpha, 5.0 / 6.0))
        throw RegimeNotCovered("L_inf^{sqrt g} bounds need alpha > 5/6");
    const double dd = static_cast<double>(d);
    const double low = alpha / 2.0 + dd / 4.0;
    const double up_log = alpha / 2.0 + 1.0 / 12.0;
    return {.lower = {low, low * (dd - 1.0)},
            .upper = {alpha / 2.0 + 1.0 / 12.0 - 0.5, up_log * (dd - 1.0)}};
}

HilbertCoincidenceReport hilbert_coincidence_check(double alpha, std::size_t d,
                                                   std::size_t n_max) {
    HilbertCoincidenceReport report;
    report.sequence = exact_widths(alpha, d, n_max);
    report.bernstein_entropy_constant = 2.0 * std::numbers::sqrt2;
    const auto& s = report.sequence.values;

    report.non_increasing = std::is_sorted(s.rbegin(), s.rend());

    // a = b = c = d = x = s; e is only known to lie in [b / (2 sqrt 2), a].
    bool ok = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double a = s[i], b = s[i], c = s[i], dn = s[i], x = s[i];
        const double e_low = b / report.bernstein_entropy_constant;
        const double e_up = a;
        ok = ok && b <= std::min(c, dn) && x <= a && e_up <= a &&
             b <= report.bernstein_entropy_constant * e_low * (1.0 + 1e-15) && e_low <= e_up;
        report.entropy_lower.push_back(e_low);
        report.entropy_upper.push_back(e_up);
    }
    report.orderings_hold = ok && report.non_increasing;
    report.relations = {
        "a_n = b_n = c_n = d_n = x_n (Hilbert spaces carry a single s-number)",
        "b_n <= min(c_n, d_n)",
        "e_n <= a_n",
        "b_n <= 2 sqrt(2) e_n",
    };
    return report;
}

}  // namespace hw
