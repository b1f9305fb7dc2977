#include "hw/cli.hpp"

#include "hw/approx.hpp"
#include "hw/assembler.hpp"
#include "hw/bernstein.hpp"
#include "hw/error.hpp"
#include "hw/fit.hpp"
#include "hw/indexsets.hpp"
#include "hw/widths.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace hw::cli {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>) return v;
            else return std::to_string(v);
        },
        c);
}

Json json_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
            }
            return v;
        },
        c);
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    Json meta = Json::object();
};

struct Options {
    std::string format = "csv";
    std::string out_path;
};

std::uint64_t default_cap(std::uint64_t fallback) {
    if (const char* env = std::getenv("HW_CAP")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
        throw InvalidArgument(std::string("HW_CAP is not a positive integer: ") + env);
    }
    return fallback;
}

void write_text(const Options& opt, const std::string& text, std::ostream& out) {
    if (opt.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(opt.out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidArgument("cannot open output file " + opt.out_path);
    f << text;
}

void emit(const Options& opt, const Table& t, std::ostream& out) {
    std::string text;
    if (opt.format == "json") {
        Json doc = t.meta;
        Json rows = Json::array();
        for (const auto& r : t.rows) {
            Json obj = Json::object();
            for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = json_cell(r[i]);
            rows.push_back(std::move(obj));
        }
        doc["rows"] = std::move(rows);
        text = doc.dump(2) + "\n";
    } else {
        for (std::size_t i = 0; i < t.header.size(); ++i) text += (i ? "," : "") + t.header[i];
        text += "\n";
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) text += (i ? "," : "") + format_cell(r[i]);
            text += "\n";
        }
    }
    write_text(opt, text, out);
}

void add_output_flags(CLI::App* sub, Options& opt) {
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", opt.out_path, "Write to PATH instead of stdout");
}

// ------------------------------------------------------------------ widths

struct WidthsArgs {
    double alpha = 0.0;
    std::size_t d = 1;
    std::size_t n_max = 0;
    std::uint64_t cap = 0;
};

Table cmd_widths(const WidthsArgs& a) {
    const auto seq = exact_widths(a.alpha, a.d, a.n_max, a.cap);
    const double limit = asymptotic_limit(a.alpha, a.d);
    Table t;
    t.header = {"n", "s_n", "ratio_to_asymptotic", "limit_constant"};
    t.meta = {{"command", "widths"}, {"alpha", a.alpha}, {"d", a.d}, {"n_max", a.n_max}};
    for (std::size_t n = 1; n <= seq.size(); ++n) {
        const double ratio = n >= 2 ? asymptotic_ratio(a.alpha, a.d, n) : kNaN;
        t.rows.push_back({static_cast<std::uint64_t>(n), seq.s(n), ratio, limit});
    }
    return t;
}

// ------------------------------------------------------------------ count / cross

Table cmd_count(std::uint64_t r_max, std::size_t d) {
    if (r_max < 1) throw InvalidArgument("--r-max must be >= 1");
    CountingFunction c(d);
    Table t;
    t.header = {"r", "c", "lower", "upper", "within_bounds"};
    t.meta = {{"command", "count"}, {"r_max", r_max}, {"d", d}};
    for (std::uint64_t r = 1; r <= r_max; ++r) {
        const auto v = c.count(r);
        // the bounds degenerate at r = 1 (ln r = 0)
        const auto b = r > 1 ? chernov_dung_bounds(static_cast<double>(r), d) : CountBounds{kNaN, kNaN};
        const double cv = static_cast<double>(v);
        t.rows.push_back({r, v, b.lower, b.upper, b.lower < cv && cv < b.upper});
    }
    return t;
}

Table cmd_cross(int xi, std::size_t d) {
    if (xi < 0) throw InvalidArgument("--xi must be >= 0");
    Table t;
    t.header = {"xi", "cardinality", "ratio_to_2^xi_xi^(d-1)"};
    t.meta = {{"command", "cross"}, {"xi", xi}, {"d", d}};
    for (int x = 0; x <= xi; ++x) {
        const auto size = hyperbolic_cross_size(x, d);
        // 2^0 0^(d-1) vanishes for d >= 2
        double ratio = kNaN;
        if (x >= 1) ratio = cross_cardinality_ratio(x, d);
        else if (d == 1) ratio = static_cast<double>(size);
        t.rows.push_back({static_cast<std::int64_t>(x), size, ratio});
    }
    return t;
}

// ------------------------------------------------------------------ approx

struct ApproxArgs {
    double alpha = 0.0;
    std::size_t d = 1;
    int xi_min = 0;
    int xi = 0;
    double eps = 0.05;
    double spacing = 0.02;
};

Table cmd_approx(const ApproxArgs& a) {
    GridSpec grid;
    grid.spacing = a.spacing;
    const auto rule = PowerLawRule::near_boundary(a.alpha, a.eps);
    const auto study = convergence_study(rule, a.alpha, a.d, a.xi_min, a.xi, grid);
    Table t;
    t.header = {"xi",        "rank",        "l2_error",  "linf_sqrtg_error", "tail_sobolev_norm",
                "linf_bound", "l2_shape", "linf_shape"};
    t.meta = {{"command", "approx"},
              {"alpha", a.alpha},
              {"d", a.d},
              {"tau", rule.tau},
              {"grid_spacing", a.spacing},
              {"fitted_l2_slope", json_cell(study.fitted_l2_slope)},
              {"log_corrected_l2_slope", json_cell(study.log_corrected_l2_slope)},
              {"linf_support_xi", study.linf_support_xi}};
    for (const auto& r : study.rows)
        t.rows.push_back({static_cast<std::int64_t>(r.xi), r.rank, r.l2_error, r.linf_sqrtg_error,
                          r.tail_sobolev_norm, r.linf_bound, r.l2_shape, r.linf_shape});
    return t;
}

// ------------------------------------------------------------------ assemble / envelope

struct AssembleArgs {
    std::uint64_t n = 0;
    double a = 0.0;
    double delta = 0.0;
    std::size_t d = 1;
    std::uint64_t cap = 0;
};

void cmd_assemble(const AssembleArgs& a, const Options& opt, std::ostream& out) {
    const auto plan = build_budget(a.n, a.a, a.delta, a.d, a.cap);
    if (opt.format == "csv") {
        Table t;
        for (std::size_t j = 0; j < a.d; ++j) t.header.push_back("k" + std::to_string(j + 1));
        t.header.push_back("n_k");
        for (std::size_t i = 0; i < plan.size(); ++i) {
            std::vector<Cell> row;
            for (int v : plan.k(i)) row.emplace_back(static_cast<std::int64_t>(v));
            row.emplace_back(plan.n_k(i));
            t.rows.push_back(std::move(row));
        }
        emit(opt, t, out);
        return;
    }
    Json doc = {{"n", plan.n()}, {"a", plan.a()},   {"delta", plan.delta()},
                {"d", plan.d()}, {"xi_n", plan.xi_n()}};
    Json alloc = Json::array();
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const auto k = plan.k(i);
        alloc.push_back({{"k", std::vector<int>(k.begin(), k.end())}, {"n_k", plan.n_k(i)}});
    }
    doc["allocations"] = std::move(alloc);
    write_text(opt, doc.dump(2) + "\n", out);
}

struct EnvelopeArgs {
    std::vector<std::uint64_t> n;
    double a = 1.0;
    double b = 1.0;
    double p = 2.0;
    double q = 1.0;
    double theta = 1.5;
    std::size_t d = 1;
};

Table cmd_envelope(const EnvelopeArgs& a) {
    Table t;
    t.header = {"n", "value", "inner_sum", "tail_sum", "k_cut", "delta", "xi_n", "normalized"};
    t.meta = {{"command", "envelope"}, {"a", a.a}, {"b", a.b}, {"p", a.p},
              {"q", a.q},              {"theta", a.theta},     {"d", a.d}};
    for (auto n : a.n) {
        const auto e = assemble_envelope(n, a.a, a.b, a.p, a.q, a.theta, a.d);
        const double ln = std::log(static_cast<double>(n));
        const double norm = e.value * std::pow(static_cast<double>(n), a.a) * std::pow(ln, -a.b);
        t.rows.push_back({n, e.value, e.inner_sum, e.tail_sum, static_cast<std::int64_t>(e.k_cut),
                          e.delta, e.xi_n, norm});
    }
    return t;
}

// ------------------------------------------------------------------ nikolskii / bernstein

struct NikolskiiArgs {
    int m_min = 4;
    int m_max = 256;
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    double spacing = 0.01;
};

Table cmd_nikolskii(const NikolskiiArgs& a) {
    if (a.m_min < 1 || a.m_max < a.m_min) throw InvalidArgument("need 1 <= --m-min <= --m-max");
    std::vector<int> degrees;
    for (long m = a.m_min; m <= a.m_max; m *= 2) degrees.push_back(static_cast<int>(m));
    const auto sweep = nikolskii_sweep(degrees, a.trials, a.seed, a.spacing);
    Table t;
    t.header = {"m", "trials", "seed", "max_ratio", "mean_ratio", "min_ratio", "mrs_number",
                "grid_points"};
    t.meta = {{"command", "nikolskii"},
              {"seed", a.seed},
              {"trials", a.trials},
              {"grid_spacing", a.spacing},
              {"fitted_exponent", json_cell(sweep.fitted_exponent)}};
    for (const auto& r : sweep.rows)
        t.rows.push_back({static_cast<std::int64_t>(r.m), static_cast<std::uint64_t>(r.trials),
                          r.seed, r.max_ratio, r.mean_ratio, r.min_ratio,
                          mrs_number(static_cast<std::uint64_t>(r.m)),
                          static_cast<std::uint64_t>(r.grid_points)});
    return t;
}

struct BernsteinArgs {
    double alpha = 0.0;
    std::size_t d = 1;
    int xi_min = 0;
    int xi = 0;
    std::uint64_t seed = 0;
    double spacing = 0.05;
    std::uint64_t cap = 0;
};

Table cmd_bernstein(const BernsteinArgs& a) {
    if (a.xi_min < 0 || a.xi < a.xi_min) throw InvalidArgument("need 0 <= --xi-min <= --xi");
    BernsteinGrid grid;
    grid.spacing = a.spacing;
    grid.guard = static_cast<double>(a.cap);
    Table t;
    t.header = {"xi", "n", "grid_points", "estimate", "raw_estimate", "predicted_shape", "seed"};
    std::vector<double> xs, ys;
    for (int x = a.xi_min; x <= a.xi; ++x) {
        const auto e = bernstein_lower_estimate(a.alpha, x, a.d, grid, a.seed);
        t.rows.push_back({static_cast<std::int64_t>(x), static_cast<std::uint64_t>(e.n),
                          static_cast<std::uint64_t>(e.grid_points), e.estimate, e.raw_estimate,
                          e.predicted_shape, a.seed});
        xs.push_back(x);
        ys.push_back(std::log2(e.estimate));
    }
    t.meta = {{"command", "bernstein"},
              {"alpha", a.alpha},
              {"d", a.d},
              {"seed", a.seed},
              {"grid_spacing", a.spacing},
              {"fitted_log2_slope", json_cell(fit_slope(xs, ys))}};
    return t;
}

// ------------------------------------------------------------------ rates

struct RatesArgs {
    std::string kind;
    double p = 2.0;
    double q = 2.0;
    double alpha = 0.0;
    std::size_t d = 1;
};

void cmd_rates(const RatesArgs& a, const Options& opt, std::ostream& out) {
    auto line = [](const RateExponent& r) {
        return "a=" + format_double(r.a) + " b=" + format_double(r.b);
    };
    if (a.kind == "linf") {
        const auto b = linf_exponent_bounds(a.alpha, a.d);
        if (opt.format == "json") {
            const Json doc = {{"kind", "linf"},
                              {"lower", {{"a", b.lower.a}, {"b", b.lower.b}}},
                              {"upper", {{"a", b.upper.a}, {"b", b.upper.b}}}};
            write_text(opt, doc.dump(2) + "\n", out);
        } else {
            write_text(opt, "lower " + line(b.lower) + "\nupper " + line(b.upper) + "\n", out);
        }
        return;
    }
    const auto r = rate_exponent(parse_kind(a.kind), a.p, a.q, a.alpha, a.d);
    if (opt.format == "json") {
        const Json doc = {{"kind", a.kind}, {"a", r.a}, {"b", r.b}};
        write_text(opt, doc.dump(2) + "\n", out);
    } else {
        write_text(opt, line(r) + "\n", out);
    }
}

int run_checked(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gaussian-weighted Sobolev embeddings: s-numbers, hyperbolic crosses, "
                 "Hermite approximation"};
    app.require_subcommand(1);
    Options opt;
    std::function<void()> action;

    const std::uint64_t cap = default_cap(kDefaultEnumerationCap);

    WidthsArgs wa;
    wa.cap = cap;
    auto* widths = app.add_subcommand("widths", "Exact s-numbers of the Hilbert embedding");
    widths->add_option("--alpha", wa.alpha, "Smoothness alpha > 0")->required();
    widths->add_option("--d", wa.d, "Dimension")->required();
    widths->add_option("--n-max", wa.n_max, "Number of terms")->required();
    widths->add_option("--cap", wa.cap, "Enumeration cap")->capture_default_str();
    add_output_flags(widths, opt);
    widths->callback([&] { action = [&] { emit(opt, cmd_widths(wa), out); }; });

    std::uint64_t r_max = 0;
    std::size_t count_d = 1;
    auto* count = app.add_subcommand("count", "Counting function c(r,d) against its bounds");
    count->add_option("--r-max", r_max, "Largest r")->required();
    count->add_option("--d", count_d, "Dimension")->required();
    add_output_flags(count, opt);
    count->callback([&] { action = [&] { emit(opt, cmd_count(r_max, count_d), out); }; });

    int cross_xi = 0;
    std::size_t cross_d = 1;
    auto* cross = app.add_subcommand("cross", "Hyperbolic cross cardinalities");
    cross->add_option("--xi", cross_xi, "Largest level")->required();
    cross->add_option("--d", cross_d, "Dimension")->required();
    add_output_flags(cross, opt);
    cross->callback([&] { action = [&] { emit(opt, cmd_cross(cross_xi, cross_d), out); }; });

    ApproxArgs aa;
    auto* approx = app.add_subcommand("approx", "Truncation errors on hyperbolic crosses");
    approx->add_option("--alpha", aa.alpha, "Smoothness alpha > 5/6")->required();
    approx->add_option("--d", aa.d, "Dimension")->required();
    approx->add_option("--xi", aa.xi, "Largest level")->required();
    approx->add_option("--xi-min", aa.xi_min, "Smallest level")->capture_default_str();
    approx->add_option("--eps", aa.eps, "Distance of the test function to the H^alpha boundary")
        ->capture_default_str();
    approx->add_option("--grid-spacing", aa.spacing, "L_inf grid spacing")->capture_default_str();
    add_output_flags(approx, opt);
    approx->callback([&] { action = [&] { emit(opt, cmd_approx(aa), out); }; });

    AssembleArgs sa;
    sa.cap = default_cap(kDefaultCubeCap);
    auto* assemble = app.add_subcommand("assemble", "Budget allocation over unit cubes");
    assemble->add_option("--n", sa.n, "Total budget n >= 2")->required();
    assemble->add_option("--a", sa.a, "Local rate exponent a > 0")->required();
    assemble->add_option("--delta", sa.delta, "Decay parameter delta > 0")->required();
    assemble->add_option("--d", sa.d, "Dimension")->required();
    assemble->add_option("--cap", sa.cap, "Cube cap")->capture_default_str();
    add_output_flags(assemble, opt);
    opt.format = "csv";
    assemble->callback([&] {
        if (assemble->count("--format") == 0) opt.format = "json";
        action = [&] { cmd_assemble(sa, opt, out); };
    });

    EnvelopeArgs ea;
    auto* envelope = app.add_subcommand("envelope", "Assembled s-number bound for q < p");
    envelope->add_option("--n", ea.n, "Budgets n >= 2")->required();
    envelope->add_option("--a", ea.a, "Block rate exponent")->capture_default_str();
    envelope->add_option("--b", ea.b, "Block log exponent")->capture_default_str();
    envelope->add_option("--p", ea.p, "Source exponent p")->capture_default_str();
    envelope->add_option("--q", ea.q, "Target exponent q < p")->capture_default_str();
    envelope->add_option("--theta", ea.theta, "Cube side theta > 1")->capture_default_str();
    envelope->add_option("--d", ea.d, "Dimension")->capture_default_str();
    add_output_flags(envelope, opt);
    envelope->callback([&] { action = [&] { emit(opt, cmd_envelope(ea), out); }; });

    NikolskiiArgs na;
    auto* nik = app.add_subcommand("nikolskii", "Random probe of the Nikol'skii inequality");
    nik->add_option("--m-min", na.m_min, "Smallest degree")->capture_default_str();
    nik->add_option("--m-max", na.m_max, "Largest degree (degrees double from --m-min)")
        ->capture_default_str();
    nik->add_option("--trials", na.trials, "Random polynomials per degree")->capture_default_str();
    nik->add_option("--seed", na.seed, "RNG seed")->capture_default_str();
    nik->add_option("--grid-spacing", na.spacing, "L_inf grid spacing")->capture_default_str();
    add_output_flags(nik, opt);
    nik->callback([&] { action = [&] { emit(opt, cmd_nikolskii(na), out); }; });

    BernsteinArgs ba;
    ba.cap = default_cap(100'000'000);
    auto* bern = app.add_subcommand("bernstein", "Certified lower estimates on hyperbolic crosses");
    bern->add_option("--alpha", ba.alpha, "Smoothness alpha > 0")->required();
    bern->add_option("--d", ba.d, "Dimension")->required();
    bern->add_option("--xi", ba.xi, "Largest level")->required();
    bern->add_option("--xi-min", ba.xi_min, "Smallest level")->capture_default_str();
    bern->add_option("--seed", ba.seed, "Seed for d >= 3 sampling")->capture_default_str();
    bern->add_option("--grid-spacing", ba.spacing, "Grid spacing")->capture_default_str();
    bern->add_option("--cap", ba.cap, "Matrix entry cap")->capture_default_str();
    add_output_flags(bern, opt);
    bern->callback([&] { action = [&] { emit(opt, cmd_bernstein(ba), out); }; });

    RatesArgs ra;
    auto* rates = app.add_subcommand("rates", "Asymptotic rate exponents");
    rates->add_option("--kind", ra.kind, "s-number kind a|b|c|d|e|x, or linf")->required();
    rates->add_option("--p", ra.p, "Source exponent p")->capture_default_str();
    rates->add_option("--q", ra.q, "Target exponent q")->capture_default_str();
    rates->add_option("--alpha", ra.alpha, "Smoothness alpha")->required();
    rates->add_option("--d", ra.d, "Dimension")->required();
    add_output_flags(rates, opt);
    rates->callback([&] { action = [&] { cmd_rates(ra, opt, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 2;
    }

    if (action) action();
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return run_checked(argc, argv, out, err);
    } catch (const Error& e) {
        err << "error: " << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hw::cli
