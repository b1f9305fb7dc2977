#include "hw/indexsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hw {

namespace detail {

void require_dimension(std::size_t d) {
    if (d == 0) throw InvalidArgument("dimension d must be >= 1");
}

std::uint64_t level_bound(double r) {
    if (!(r >= 1.0)) throw InvalidArgument("level parameter r must be >= 1");
    if (r >= 9.2e18) throw Overflow("level parameter r exceeds the 64-bit product range");
    // Products are integers, so prod <= r  <=>  prod <= floor(r).
    return static_cast<std::uint64_t>(std::floor(r));
}

}  // namespace detail

double rho(const MultiIndex& k, double alpha) {
    double out = 1.0;
    for (int kj : k) out *= std::pow(static_cast<double>(kj) + 1.0, alpha);
    return out;
}

std::uint64_t index_product(const MultiIndex& k) {
    std::uint64_t p = 1;
    for (int kj : k) {
        const auto f = static_cast<std::uint64_t>(kj) + 1;
        if (p > std::numeric_limits<std::int64_t>::max() / f)
            throw Overflow("index product of " + k.to_string() + " exceeds 2^63");
        p *= f;
    }
    return p;
}

IndexSet level_set(double r, std::size_t d) {
    std::vector<MultiIndex> members;
    for_each_in_level_set(r, d, [&](const std::vector<int>& k, std::uint64_t) {
        members.emplace_back(k);
    });
    return IndexSet(d, std::move(members));
}

CountingFunction::CountingFunction(std::size_t d) : d_(d), memo_(d + 1) {
    detail::require_dimension(d);
}

std::uint64_t CountingFunction::operator()(double r) {
    return eval(detail::level_bound(r), d_);
}

std::uint64_t CountingFunction::eval(std::uint64_t bound, std::size_t d) {
    if (bound == 0) return 0;
    if (d == 1) return bound;
    auto& memo = memo_[d];
    if (auto it = memo.find(bound); it != memo.end()) return it->second;

    std::uint64_t total = 0;
    for (std::uint64_t f = 1; f <= bound;) {
        const std::uint64_t q = bound / f;
        const std::uint64_t last = bound / q;
        const std::uint64_t term = (last - f + 1) * eval(q, d - 1);
        if (total > std::numeric_limits<std::uint64_t>::max() - term)
            throw Overflow("c(r,d) exceeds 2^64");
        total += term;
        f = last + 1;
    }
    memo.emplace(bound, total);
    return total;
}

std::uint64_t count_c(double r, std::size_t d) {
    CountingFunction c(d);
    return c(r);
}

CountBounds chernov_dung_bounds(double r, std::size_t d) {
    detail::require_dimension(d);
    if (!(r > 1.0)) throw InvalidArgument("count bounds require r > 1");
    const double dd = static_cast<double>(d);
    const double lr = std::log(r);
    const double fact = std::tgamma(dd);  // (d-1)!
    const double shifted = lr + dd * std::log(2.0);
    return {
        .lower = r * std::pow(lr, dd) / (fact * (lr + dd)),
        .upper = r * std::pow(shifted, dd) / (fact * (shifted + dd - 1.0)),
    };
}

RStarProbe probe_r_star(const std::vector<std::uint64_t>& rs, std::size_t d) {
    RStarProbe probe{.d = d, .violations = {}};
    CountingFunction c(d);
    for (std::uint64_t r : rs) {
        if (r < 2) {
            probe.violations.push_back(r);
            continue;
        }
        const auto b = chernov_dung_bounds(static_cast<double>(r), d);
        const auto value = static_cast<double>(c.count(r));
        if (!(b.lower < value && value < b.upper)) probe.violations.push_back(r);
    }
    std::sort(probe.violations.begin(), probe.violations.end());
    return probe;
}

IndexSet dyadic_block(const MultiIndex& s) {
    std::vector<int> lo(s.size()), hi(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] > 30) throw ResourceLimit("dyadic level above 30");
        lo[j] = s[j] == 0 ? 0 : (1 << (s[j] - 1));
        hi[j] = 1 << s[j];
    }
    std::vector<MultiIndex> members;
    std::vector<int> k = lo;
    while (true) {
        members.emplace_back(k);
        std::size_t j = s.size();
        // odometer with the last coordinate fastest
        while (j > 0) {
            --j;
            if (++k[j] <= hi[j]) break;
            k[j] = lo[j];
            if (j == 0) return IndexSet(s.size(), std::move(members));
        }
    }
}

int dyadic_level(int k) noexcept {
    if (k <= 1) return 0;
    int s = 0;
    while ((1 << s) < k) ++s;
    return s;
}

int cross_level(const MultiIndex& k) noexcept {
    int total = 0;
    for (int kj : k) total += dyadic_level(kj);
    return total;
}

IndexSet hyperbolic_cross(int xi, std::size_t d) {
    std::vector<MultiIndex> members;
    for_each_in_hyperbolic_cross(xi, d, [&](const std::vector<int>& k) { members.emplace_back(k); });
    return IndexSet(d, std::move(members));
}

std::uint64_t hyperbolic_cross_size(int xi, std::size_t d) {
    detail::require_dimension(d);
    if (xi < 0) throw InvalidArgument("xi must be nonnegative");
    if (xi > 60) throw Overflow("xi too large for 64-bit cardinality");
    // ways[t] = number of k in N_0^j with cross_level(k) = t
    std::vector<std::uint64_t> per_level(xi + 1);
    per_level[0] = 2;
    for (int s = 1; s <= xi; ++s) per_level[s] = std::uint64_t{1} << (s - 1);
    std::vector<std::uint64_t> ways(xi + 1, 0);
    ways[0] = 1;
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<std::uint64_t> next(xi + 1, 0);
        for (int t = 0; t <= xi; ++t)
            for (int s = 0; s + t <= xi; ++s) next[t + s] += ways[t] * per_level[s];
        ways = std::move(next);
    }
    std::uint64_t total = 0;
    for (auto w : ways) total += w;
    return total;
}

double cross_cardinality_ratio(int xi, std::size_t d) {
    if (xi < 1) throw InvalidArgument("cardinality ratio requires xi >= 1");
    const double shape = std::ldexp(1.0, xi) * std::pow(static_cast<double>(xi),
                                                        static_cast<double>(d) - 1.0);
    return static_cast<double>(hyperbolic_cross_size(xi, d)) / shape;
}

}  // namespace hw
