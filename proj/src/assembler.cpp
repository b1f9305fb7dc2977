#include "hw/assembler.hpp"

#include "hw/error.hpp"
#include "hw/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hw {

namespace {

void require_exponents(double p, double q, double theta) {
    if (!std::isfinite(p) || !std::isfinite(q) || !(q >= 1.0) || !(q < p))
        throw InvalidArgument("cube decomposition needs 1 <= q < p < inf");
    if (!(theta > 1.0) || !std::isfinite(theta))
        throw InvalidArgument("cube side theta must be > 1");
}

// sign x := 1 if x >= 0 and -1 otherwise
double sign_of(int v) noexcept { return v >= 0 ? 1.0 : -1.0; }

// ln(||A_k|| ||B_k||) restricted to one coordinate
double log_weight_1d(int k, double p, double q, double theta) noexcept {
    const double s = sign_of(k) * theta / 2.0;
    const double plus = k + s;
    const double minus = k - s;
    return plus * plus / (2.0 * p) - minus * minus / (2.0 * q);
}

}  // namespace

double choose_delta(double p, double q, double theta) {
    if (!(q < p)) throw InvalidArgument("choose_delta needs q < p (delta -> 0 as q -> p)");
    require_exponents(p, q, theta);
    return 0.5 * (1.0 / (2.0 * q) - 1.0 / (2.0 * p));
}

DecayVerification verify_weight_decay(double p, double q, double theta, double delta,
                                      std::size_t d, int kmax) {
    require_exponents(p, q, theta);
    if (d == 0) throw InvalidArgument("dimension d must be >= 1");
    if (kmax < 1) throw InvalidArgument("kmax must be >= 1");
    // E(k) + delta |k|^2 splits into a sum of identical one-dimensional terms.
    auto term = [&](int k) { return log_weight_1d(k, p, q, theta) + delta * k * k; };
    double best = -std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (int k = -kmax; k <= kmax; ++k) {
        const double v = term(k);
        if (v > best) {
            best = v;
            best_k = std::abs(k);
        }
    }
    const double edge = std::max(term(-kmax), term(kmax));
    const double dd = static_cast<double>(d);
    DecayVerification out;
    out.log_constant = dd * best;
    out.argmax_inf_norm = best_k;
    out.boundary_max = edge + (dd - 1.0) * best;
    out.bounded = best_k < kmax && out.boundary_max < out.log_constant;
    return out;
}

double xi_threshold(std::uint64_t n, double delta, double a) {
    if (n < 2) throw InvalidArgument("xi_n needs n >= 2");
    if (!(delta > 0.0) || !(a > 0.0)) throw InvalidArgument("xi_n needs delta > 0 and a > 0");
    return std::sqrt(2.0 * a * std::log(static_cast<double>(n)) / delta);
}

std::uint64_t BudgetPlan::squared_norm(std::size_t i) const noexcept {
    std::uint64_t s = 0;
    for (int v : k(i)) s += static_cast<std::uint64_t>(static_cast<std::int64_t>(v) * v);
    return s;
}

std::uint64_t BudgetPlan::total() const noexcept {
    std::uint64_t t = 0;
    for (auto c : counts_) t += c;
    return t;
}

BudgetPlan build_budget(std::uint64_t n, double a, double delta, std::size_t d, std::uint64_t cap) {
    if (d == 0) throw InvalidArgument("dimension d must be >= 1");
    const double xi = xi_threshold(n, delta, a);
    const double xi2 = 2.0 * a * std::log(static_cast<double>(n)) / delta;
    const double c = delta / (2.0 * a);
    const double varrho = std::pow(0.5 * (1.0 - std::exp(-c)), static_cast<double>(d));
    const double base = varrho * static_cast<double>(n);
    if (!(base < 9.2e18)) throw Overflow("varrho * n exceeds the 64-bit range");

    const auto reach = static_cast<int>(std::floor(xi));
    const double cube = std::pow(2.0 * reach + 1.0, static_cast<double>(d));
    if (cube > static_cast<double>(cap))
        throw ResourceLimit("budget plan would scan " + std::to_string(cube) +
                            " cubes, above the cap " + std::to_string(cap));

    BudgetPlan plan;
    plan.n_ = n;
    plan.a_ = a;
    plan.delta_ = delta;
    plan.d_ = d;
    plan.xi_n_ = xi;
    plan.varrho_ = varrho;

    // n_k depends on k only through the integer |k|^2
    const std::size_t max_s2 = d * static_cast<std::size_t>(reach) * reach;
    std::vector<std::uint64_t> by_s2(max_s2 + 1);
    for (std::size_t s2 = 0; s2 <= max_s2; ++s2)
        by_s2[s2] = static_cast<std::uint64_t>(std::floor(base * std::exp(-c * static_cast<double>(s2))));

    std::vector<int> k(d, -reach);
    while (true) {
        std::size_t s2 = 0;
        for (int v : k) s2 += static_cast<std::size_t>(v * v);
        if (static_cast<double>(s2) < xi2) {
            plan.indices_.insert(plan.indices_.end(), k.begin(), k.end());
            plan.counts_.push_back(by_s2[s2]);
        }
        std::size_t j = d;
        while (j > 0) {
            --j;
            if (++k[j] <= reach) break;
            k[j] = -reach;
            if (j == 0) return plan;
        }
    }
}

double CubeWeights::a_norm_bound() const { return std::exp(log_a); }
double CubeWeights::b_norm_bound() const { return std::exp(log_b); }
double CubeWeights::product() const { return std::exp(log_a + log_b); }

CubeWeights cube_weights(std::span<const int> k, double p, double q, double theta) {
    require_exponents(p, q, theta);
    if (k.empty()) throw InvalidArgument("cube index must have length >= 1");
    CubeWeights w;
    w.k.assign(k.begin(), k.end());
    w.p = p;
    w.q = q;
    w.theta = theta;
    for (int v : k) {
        const double s = sign_of(v) * theta / 2.0;
        w.log_a += (v + s) * (v + s) / (2.0 * p);
        w.log_b -= (v - s) * (v - s) / (2.0 * q);
    }
    return w;
}

PartitionOfUnity::PartitionOfUnity(double theta) : theta_(theta) {
    if (!(theta > 1.0) || !std::isfinite(theta))
        throw InvalidArgument("partition of unity needs theta > 1 so the cubes cover R^d");
    outer_ = (1.0 + theta) / 4.0;
}

namespace {

// C^inf step: 0 for t <= 0, 1 for t >= 1
double smooth_step(double t) noexcept {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

}  // namespace

double PartitionOfUnity::bump(double t) const noexcept {
    return smooth_step((outer_ - std::abs(t)) / (outer_ - inner_));
}

double PartitionOfUnity::factor(double t) const noexcept {
    const double own = bump(t);
    if (own == 0.0) return 0.0;
    double norm = 0.0;
    const auto lo = static_cast<long>(std::ceil(t - outer_));
    const auto hi = static_cast<long>(std::floor(t + outer_));
    for (long m = lo; m <= hi; ++m) norm += bump(t - static_cast<double>(m));
    return own / norm;
}

double PartitionOfUnity::operator()(std::span<const int> k, std::span<const double> x) const {
    if (k.size() != x.size()) throw DimensionMismatch("cube index and point differ in length");
    double out = 1.0;
    for (std::size_t j = 0; j < x.size() && out != 0.0; ++j)
        out *= factor(x[j] - static_cast<double>(k[j]));
    return out;
}

double PartitionOfUnity::sobolev_norm(int alpha, double p, std::size_t d, std::size_t cells) const {
    if (alpha < 0 || alpha > 4) throw InvalidArgument("sobolev_norm supports 0 <= alpha <= 4");
    if (!(p >= 1.0)) throw InvalidArgument("sobolev_norm needs p >= 1");
    if (d == 0 || cells < 10) throw InvalidArgument("invalid dimension or cell count");
    const double half = theta_ / 2.0;
    const double h = 2.0 * half / static_cast<double>(cells);
    CompensatedSum per_order;
    for (int r = 0; r <= alpha; ++r) {
        // central r-th difference; step balances truncation O(step^2) and rounding eps/step^r
        const double step = r == 0 ? 0.0 : std::pow(1e-16, 1.0 / (r + 2.0));
        CompensatedSum acc;
        for (std::size_t i = 0; i < cells; ++i) {
            const double x = -half + (static_cast<double>(i) + 0.5) * h;
            double v;
            if (r == 0) {
                v = factor(x);
            } else {
                v = 0.0;
                double binom = 1.0;
                for (int t = 0; t <= r; ++t) {
                    v += ((t % 2) ? -binom : binom) * factor(x + (r / 2.0 - t) * step);
                    binom = binom * (r - t) / (t + 1.0);
                }
                v /= std::pow(step, r);
            }
            acc.add(std::pow(std::abs(v), p) * h);
        }
        per_order.add(acc.value());
    }
    return std::pow(per_order.value(), static_cast<double>(d) / p);
}

PartitionOfUnity build_partition_of_unity(double theta) { return PartitionOfUnity(theta); }

BlockRate default_block_rate(double a, double b) {
    return [a, b](std::uint64_t m) {
        const double mm = static_cast<double>(std::max<std::uint64_t>(m, 1));
        return std::pow(mm, -a) * std::pow(1.0 + std::log(mm), b);
    };
}

namespace {

// Visits every k in Z^d with |k|_inf = shell.
template <class Visitor>
void for_each_in_shell(std::vector<int>& k, std::size_t j, int shell, bool hit, Visitor& visit) {
    if (j == k.size()) {
        if (hit) visit(static_cast<const std::vector<int>&>(k));
        return;
    }
    if (j + 1 == k.size() && !hit) {
        k[j] = -shell;
        for_each_in_shell(k, j + 1, shell, true, visit);
        if (shell != 0) {
            k[j] = shell;
            for_each_in_shell(k, j + 1, shell, true, visit);
        }
        return;
    }
    for (int v = -shell; v <= shell; ++v) {
        k[j] = v;
        for_each_in_shell(k, j + 1, shell, hit || std::abs(v) == shell, visit);
    }
}

}  // namespace

Envelope assemble_envelope(std::uint64_t n, double a, double b, double p, double q, double theta,
                           std::size_t d, const BlockRate& block_rate) {
    const double delta = choose_delta(p, q, theta);
    if (!(b >= 0.0)) throw InvalidArgument("log exponent b must be >= 0");
    const BlockRate rate = block_rate ? block_rate : default_block_rate(a, b);
    const auto plan = build_budget(n, a, delta, d);

    Envelope env;
    env.delta = delta;
    env.xi_n = plan.xi_n();

    auto log_weight = [&](std::span<const int> k) {
        double e = 0.0;
        for (int v : k) e += log_weight_1d(v, p, q, theta);
        return e;
    };

    // ball terms in increasing |k|^2
    std::vector<std::size_t> order(plan.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return plan.squared_norm(x) < plan.squared_norm(y);
    });
    CompensatedSum inner;
    for (std::size_t i : order)
        inner.add(std::exp(log_weight(plan.k(i))) * rate(std::max<std::uint64_t>(plan.n_k(i), 1)));
    env.inner_sum = inner.value();

    const double xi2 = 2.0 * a * std::log(static_cast<double>(n)) / delta;
    const double sqrt_d = std::sqrt(static_cast<double>(d));
    int shell = std::max(0, static_cast<int>(std::floor(plan.xi_n() / sqrt_d)) - 1);
    CompensatedSum tail;
    std::vector<int> k(d, 0);
    for (;; ++shell) {
        CompensatedSum part;
        auto visit = [&](const std::vector<int>& kk) {
            double s2 = 0.0;
            for (int v : kk) s2 += static_cast<double>(v) * v;
            if (s2 >= xi2) part.add(std::exp(log_weight(kk)));
        };
        for_each_in_shell(k, 0, shell, false, visit);
        tail.add(part.value());
        const bool outside = static_cast<double>(shell) > plan.xi_n() + 1.0;
        if (outside && part.value() <= 1e-15 * tail.value()) break;
        if (shell > 100000) throw ResourceLimit("envelope tail did not converge");
    }
    env.tail_sum = tail.value();
    env.k_cut = shell;
    env.value = env.inner_sum + env.tail_sum;
    return env;
}

double geometric_binomial_sum(double x, int k) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidArgument("geometric_binomial_sum needs 0 < x < 1");
    if (k < 0) throw InvalidArgument("k must be nonnegative");
    return std::pow(1.0 - x, -static_cast<double>(k) - 1.0);
}

GeometricBinomialCheck geometric_binomial_check(double x, int k, double tol, std::size_t max_terms) {
    GeometricBinomialCheck out;
    out.closed_form = geometric_binomial_sum(x, k);
    CompensatedSum acc;
    double term = 1.0;  // x^0 C(k, k)
    for (std::size_t j = 0; j < max_terms; ++j) {
        acc.add(term);
        out.terms = j + 1;
        if (std::abs(acc.value() - out.closed_form) <= tol) {
            out.converged = true;
            break;
        }
        term *= x * (static_cast<double>(j) + k + 1.0) / (static_cast<double>(j) + 1.0);
    }
    out.partial_sum = acc.value();
    return out;
}

}  // namespace hw
