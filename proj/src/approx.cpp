#include "hw/approx.hpp"

#include "hw/error.hpp"
#include "hw/fit.hpp"
#include "hw/indexsets.hpp"
#include "hw/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hw {

double minimum_grid_radius(int max_degree) noexcept {
    return std::sqrt(2.0 * max_degree) + 6.0;
}

double default_grid_radius(int max_degree) noexcept {
    return 2.0 * std::sqrt(static_cast<double>(max_degree)) + 6.0;
}

std::vector<double> grid_nodes(double radius, double spacing) {
    if (!(spacing > 0.0)) throw InvalidArgument("grid spacing must be > 0");
    if (!(radius > 0.0)) throw InvalidArgument("grid radius must be > 0");
    const auto steps = static_cast<std::size_t>(std::ceil(2.0 * radius / spacing - 1e-9));
    std::vector<double> nodes(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        nodes[i] = -radius + 2.0 * radius * static_cast<double>(i) / static_cast<double>(steps);
    return nodes;
}

HermiteSeries truncate(const HermiteSeries& s, int xi) {
    HermiteSeries out(s.dimension());
    for (const auto& [k, c] : s.coefficients())
        if (in_hyperbolic_cross(k, xi)) out.set(k, c);
    return out;
}

HermiteSeries truncation_tail(const HermiteSeries& s, int xi) {
    HermiteSeries out(s.dimension());
    for (const auto& [k, c] : s.coefficients())
        if (!in_hyperbolic_cross(k, xi)) out.set(k, c);
    return out;
}

double l2_error(const HermiteSeries& s, int xi) {
    CompensatedSum acc;
    for (const auto& [k, c] : s.coefficients())
        if (!in_hyperbolic_cross(k, xi)) acc.add(c * c);
    return std::sqrt(acc.value());
}

namespace {

struct Term {
    const MultiIndex* k;
    double c;
    int level;
};

// One sweep over the grid: terms are accumulated into per-cross-level buckets at each
// point, so the tail beyond every requested xi falls out of a suffix sum. A requested
// xi of -1 yields the sup of the whole series.
std::vector<double> grid_tail_maxima(const HermiteSeries& s, const std::vector<int>& xis,
                                     const GridSpec& grid) {
    std::vector<double> result(xis.size(), 0.0);
    if (s.empty()) return result;
    if (!(grid.spacing > 0.0)) throw InvalidArgument("grid spacing must be > 0");
    if (grid.spacing > grid.max_spacing)
        throw InvalidArgument("grid spacing " + std::to_string(grid.spacing) +
                              " exceeds the allowed maximum " + std::to_string(grid.max_spacing));
    const int kmax = s.max_degree();
    const double radius = grid.radius > 0.0 ? grid.radius : default_grid_radius(kmax);
    if (radius < minimum_grid_radius(kmax) - 1e-12)
        throw InvalidArgument("grid radius " + std::to_string(radius) +
                              " does not cover sqrt(2K)+6 for K = " + std::to_string(kmax));

    const auto nodes = grid_nodes(radius, grid.spacing);
    const std::size_t d = s.dimension();
    const double points = std::pow(static_cast<double>(nodes.size()), static_cast<double>(d));
    if (points * static_cast<double>(s.size()) > grid.work_cap)
        throw ResourceLimit("grid evaluation work " + std::to_string(points * s.size()) +
                            " exceeds cap " + std::to_string(grid.work_cap));

    std::vector<Term> terms;
    terms.reserve(s.size());
    int max_level = 0;
    for (const auto& [k, c] : s.coefficients()) {
        const int level = cross_level(k);
        terms.push_back({&k, c, level});
        max_level = std::max(max_level, level);
    }

    std::vector<double> bucket(max_level + 2, 0.0);
    auto update = [&]() {
        // bucket[l] becomes the sum over levels >= l
        for (int l = max_level - 1; l >= 0; --l) bucket[l] += bucket[l + 1];
        for (std::size_t i = 0; i < xis.size(); ++i) {
            const int from = xis[i] + 1;
            const double v = from <= max_level ? bucket[std::max(from, 0)] : 0.0;
            result[i] = std::max(result[i], std::abs(v));
        }
        std::fill(bucket.begin(), bucket.end(), 0.0);
    };

    if (d == 1) {
        std::vector<int> degree(terms.size());
        for (std::size_t i = 0; i < terms.size(); ++i) degree[i] = (*terms[i].k)[0];
        for (double x : nodes) {
            const auto w = hermite_all_weighted(kmax, x);
            for (std::size_t i = 0; i < terms.size(); ++i)
                bucket[terms[i].level] += terms[i].c * w[degree[i]];
            update();
        }
        return result;
    }

    if (static_cast<double>(nodes.size()) * (kmax + 1) > 1e8)
        throw ResourceLimit("per-coordinate Hermite table too large");
    std::vector<std::vector<double>> table;
    table.reserve(nodes.size());
    for (double x : nodes) table.push_back(hermite_all_weighted(kmax, x));

    std::vector<std::size_t> idx(d, 0);
    const auto total = static_cast<std::size_t>(points);
    for (std::size_t p = 0; p < total; ++p) {
        for (const auto& t : terms) {
            double v = t.c;
            for (std::size_t j = 0; j < d; ++j) v *= table[idx[j]][(*t.k)[j]];
            bucket[t.level] += v;
        }
        update();
        for (std::size_t j = d; j-- > 0;) {
            if (++idx[j] < nodes.size()) break;
            idx[j] = 0;
        }
    }
    return result;
}

}  // namespace

std::vector<double> linf_sqrtg_errors(const HermiteSeries& s, const std::vector<int>& xis,
                                      const GridSpec& grid) {
    for (int xi : xis)
        if (xi < 0) throw InvalidArgument("xi must be nonnegative");
    return grid_tail_maxima(s, xis, grid);
}

double linf_sqrtg_error(const HermiteSeries& s, int xi, const GridSpec& grid) {
    return linf_sqrtg_errors(s, {xi}, grid).front();
}

double linf_sqrtg_norm(const HermiteSeries& s, const GridSpec& grid) {
    return grid_tail_maxima(s, {-1}, grid).front();
}

CertifiedSum cross_complement_power_sum(double sigma, int xi, std::size_t d) {
    if (!(sigma > 1.0)) throw InvalidArgument("cross tail sum needs sigma > 1");
    if (d == 0) throw InvalidArgument("dimension d must be >= 1");
    if (xi < 0) throw InvalidArgument("xi must be nonnegative");
    if (xi > 60) throw Overflow("xi too large");

    // In 1-D, level 0 = {0, 1} and level c >= 1 = {2^{c-1}+1, ..., 2^c}; with j = k + 1
    // the level-c terms are j in [2^{c-1}+2, 2^c+1].
    // beyond[c] = sum over levels > c = sum_{j >= 2^c + 2} j^{-sigma}
    std::vector<double> level(xi + 1);
    std::vector<double> beyond(xi + 1);
    double err = 0.0;
    const auto total = zeta(sigma);
    err += total.error_bound;
    level[0] = 1.0 + std::pow(2.0, -sigma);
    for (int c = 0; c <= xi; ++c) {
        const auto t = zeta_tail(sigma, (std::uint64_t{1} << c) + 2);
        beyond[c] = t.value;
        err += t.error_bound;
        if (c >= 1) {
            const std::uint64_t lo = (std::uint64_t{1} << (c - 1)) + 2;
            const std::uint64_t hi = (std::uint64_t{1} << c) + 1;
            if (hi - lo < 4096) {
                CompensatedSum acc;
                for (std::uint64_t j = hi; j >= lo; --j) acc.add(std::pow(static_cast<double>(j), -sigma));
                level[c] = acc.value();
            } else {
                level[c] = beyond[c - 1] - beyond[c];
            }
        }
    }

    // comp[t] = complement sum in the current dimension for budget t
    std::vector<double> comp(beyond.begin(), beyond.end());
    double full_power = total.value;
    for (std::size_t j = 2; j <= d; ++j) {
        std::vector<double> next(xi + 1);
        for (int t = 0; t <= xi; ++t) {
            CompensatedSum acc;
            for (int c = 0; c <= t; ++c) acc.add(level[c] * comp[t - c]);
            acc.add(beyond[t] * full_power);
            next[t] = acc.value();
        }
        comp = std::move(next);
        full_power *= total.value;
    }
    const double rel = err / std::max(beyond[xi], 1e-300);
    return {comp[xi], comp[xi] * rel * static_cast<double>(d) + 1e-15 * comp[xi]};
}

TailMajorant tail_majorant(double alpha, int xi, std::size_t d) {
    if (!(alpha > 5.0 / 6.0)) throw InvalidArgument("tail majorant needs alpha > 5/6");
    const double sigma = alpha + 1.0 / 6.0;
    const auto sum = cross_complement_power_sum(sigma, xi, d);
    const double shape = std::pow(2.0, xi * (1.0 - sigma)) *
                         std::pow(static_cast<double>(xi), static_cast<double>(d) - 1.0);
    return {sum.value, sum.error_bound, shape};
}

double embedding_constant(double alpha, std::size_t d) {
    if (!(alpha > 5.0 / 6.0)) throw InvalidArgument("embedding constant needs alpha > 5/6");
    if (d == 0) throw InvalidArgument("dimension d must be >= 1");
    // pi k^{-1/6} < 1 exactly when k > pi^6 ~ 961.39
    constexpr std::uint64_t kSplit = 962;
    CompensatedSum acc;
    for (std::uint64_t k = kSplit; k-- > 0;) {
        const double bound = k == 0 ? 1.0
                                    : std::min(1.0, std::numbers::pi *
                                                        std::pow(static_cast<double>(k), -1.0 / 6.0));
        acc.add(bound * std::pow(static_cast<double>(k) + 1.0, -alpha));
    }
    acc.add(std::numbers::pi * sixth_root_weighted_tail(alpha, kSplit).value);
    return std::pow(acc.value(), static_cast<double>(d) / 2.0);
}

PowerLawRule PowerLawRule::near_boundary(double alpha, double eps) {
    if (!(alpha > 0.0)) throw InvalidArgument("alpha must be > 0");
    if (!(eps > 0.0)) throw InvalidArgument("eps must be > 0");
    return {alpha / 2.0 + 0.5 + eps};
}

double PowerLawRule::coefficient(const MultiIndex& k) const {
    double out = 1.0;
    for (int kj : k) out *= std::pow(static_cast<double>(kj) + 1.0, -tau);
    return out;
}

HermiteSeries PowerLawRule::on_cross(int xi, std::size_t d) const {
    std::map<MultiIndex, double> coeffs;
    for_each_in_hyperbolic_cross(xi, d, [&](const std::vector<int>& k) {
        MultiIndex m(k);
        const double c = coefficient(m);
        coeffs.emplace(std::move(m), c);
    });
    return HermiteSeries(d, std::move(coeffs));
}

namespace {

double l2_shape(double alpha, std::size_t d, double n) {
    return std::pow(n, -alpha / 2.0) *
           std::pow(std::log(n), (static_cast<double>(d) - 1.0) * alpha / 2.0);
}

double linf_shape(double alpha, std::size_t d, double n) {
    return std::pow(n, -alpha / 2.0 - 1.0 / 12.0 + 0.5) *
           std::pow(std::log(n), (static_cast<double>(d) - 1.0) * (alpha / 2.0 + 1.0 / 12.0));
}

void check_xi_range(int xi_min, int xi_max) {
    if (xi_min < 0 || xi_max < xi_min) throw InvalidArgument("invalid xi range");
}

void fit_slopes(ConvergenceStudy& study, double log_power) {
    std::vector<double> x, y, yc;
    for (const auto& row : study.rows) {
        if (row.l2_error > 0.0 && row.xi >= 1) {
            x.push_back(std::log(static_cast<double>(row.rank)));
            y.push_back(std::log(row.l2_error));
            yc.push_back(std::log(row.l2_error) - log_power * std::log(static_cast<double>(row.xi)));
        }
    }
    study.fitted_l2_slope = fit_slope(x, y);
    study.log_corrected_l2_slope = fit_slope(x, yc);
}

}  // namespace

ConvergenceStudy convergence_study(const PowerLawRule& rule, double alpha, std::size_t d,
                                   int xi_min, int xi_max, const GridSpec& grid,
                                   int linf_support_xi) {
    check_xi_range(xi_min, xi_max);
    if (!(alpha > 5.0 / 6.0)) throw InvalidArgument("convergence study needs alpha > 5/6");
    // ||f||_{H^alpha}^2 = zeta(2 tau - alpha)^d
    const double sobolev_sigma = 2.0 * rule.tau - alpha;
    if (!(sobolev_sigma > 1.0))
        throw InvalidArgument("divergent coefficient rule: f is not in H^alpha (2 tau - alpha <= 1)");
    if (linf_support_xi < 0) linf_support_xi = xi_max + 1;
    if (linf_support_xi <= xi_max)
        throw InvalidArgument("linf_support_xi must exceed xi_max");

    ConvergenceStudy study{.alpha = alpha, .d = d, .rows = {}, .fitted_l2_slope = 0.0,
                           .log_corrected_l2_slope = 0.0, .linf_support_xi = linf_support_xi};
    std::vector<int> xis;
    for (int xi = xi_min; xi <= xi_max; ++xi) xis.push_back(xi);
    const auto linf = linf_sqrtg_errors(rule.on_cross(linf_support_xi, d), xis, grid);
    const double c_embed = embedding_constant(alpha, d);

    for (std::size_t i = 0; i < xis.size(); ++i) {
        const int xi = xis[i];
        ConvergenceRow row;
        row.xi = xi;
        row.rank = hyperbolic_cross_size(xi, d);
        row.l2_error = std::sqrt(cross_complement_power_sum(2.0 * rule.tau, xi, d).value);
        row.tail_sobolev_norm = std::sqrt(cross_complement_power_sum(sobolev_sigma, xi, d).value);
        row.linf_sqrtg_error = linf[i];
        row.linf_bound = c_embed * row.tail_sobolev_norm;
        const auto n = static_cast<double>(row.rank);
        row.l2_shape = l2_shape(alpha, d, n);
        row.linf_shape = linf_shape(alpha, d, n);
        study.rows.push_back(row);
    }
    // l2 error ~ n^{-s/2} xi^{(d-1)(s+1)/2} with s = 2 tau - 1
    const double s = 2.0 * rule.tau - 1.0;
    fit_slopes(study, (static_cast<double>(d) - 1.0) * (s + 1.0) / 2.0);
    return study;
}

ConvergenceStudy convergence_study(const HermiteSeries& series, double alpha, int xi_min, int xi_max,
                                   const GridSpec& grid) {
    check_xi_range(xi_min, xi_max);
    if (!(alpha > 5.0 / 6.0)) throw InvalidArgument("convergence study needs alpha > 5/6");
    const std::size_t d = series.dimension();
    ConvergenceStudy study{.alpha = alpha, .d = d, .rows = {}, .fitted_l2_slope = 0.0,
                           .log_corrected_l2_slope = 0.0, .linf_support_xi = 0};
    std::vector<int> xis;
    for (int xi = xi_min; xi <= xi_max; ++xi) xis.push_back(xi);
    const auto linf = linf_sqrtg_errors(series, xis, grid);
    const double c_embed = embedding_constant(alpha, d);
    for (const auto& [k, c] : series.coefficients())
        study.linf_support_xi = std::max(study.linf_support_xi, cross_level(k));

    for (std::size_t i = 0; i < xis.size(); ++i) {
        ConvergenceRow row;
        row.xi = xis[i];
        row.rank = hyperbolic_cross_size(row.xi, d);
        row.l2_error = l2_error(series, row.xi);
        row.linf_sqrtg_error = linf[i];
        row.tail_sobolev_norm = norm_sobolev(truncation_tail(series, row.xi), alpha);
        row.linf_bound = c_embed * row.tail_sobolev_norm;
        const auto n = static_cast<double>(row.rank);
        row.l2_shape = l2_shape(alpha, d, n);
        row.linf_shape = linf_shape(alpha, d, n);
        study.rows.push_back(row);
    }
    fit_slopes(study, 0.0);
    return study;
}

}  // namespace hw
