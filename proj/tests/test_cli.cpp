#include <doctest.h>

#include "hw/cli.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hwidths");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = hw::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("widths command") {
    const auto r = run({"widths", "--alpha", "2", "--d", "1", "--n-max", "10"});
    REQUIRE(r.status == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == std::vector<std::string>{"n", "s_n", "ratio_to_asymptotic", "limit_constant"});
    for (int n = 1; n <= 10; ++n) CHECK(std::stod(rows[n][1]) == doctest::Approx(1.0 / n).epsilon(1e-15));

    const auto r2 = run({"widths", "--alpha", "2", "--d", "2", "--n-max", "8"});
    REQUIRE(r2.status == 0);
    CHECK(std::stod(csv(r2.out).back()[1]) == 0.25);

    const auto bad = run({"widths", "--d", "2", "--n-max", "8"});
    CHECK(bad.status != 0);
    CHECK(bad.err.rfind("error: usage:", 0) == 0);
    CHECK(bad.out.empty());
}

TEST_CASE("count and cross commands") {
    const auto c = run({"count", "--r-max", "100", "--d", "2"});
    REQUIRE(c.status == 0);
    const auto rows = csv(c.out);
    REQUIRE(rows.size() == 101);
    CHECK(rows[0] == std::vector<std::string>{"r", "c", "lower", "upper", "within_bounds"});
    CHECK(rows[100][4] == "true");

    const auto x1 = csv(run({"cross", "--xi", "2", "--d", "1"}).out);
    CHECK(x1.back()[1] == "5");
    const auto x2 = csv(run({"cross", "--xi", "0", "--d", "2"}).out);
    CHECK(x2.back()[1] == "4");
}

TEST_CASE("assemble command") {
    const auto r = run({"assemble", "--n", "10000", "--a", "1", "--delta", "0.125", "--d", "1"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["n"] == 10000);
    CHECK(j["d"] == 1);
    std::uint64_t total = 0;
    for (const auto& a : j["allocations"]) total += a["n_k"].get<std::uint64_t>();
    CHECK(total <= 10000);
    CHECK(total > 0);
}

TEST_CASE("rates command") {
    const auto a = run({"rates", "--kind", "a", "--p", "3", "--q", "2", "--alpha", "2", "--d", "5"});
    CHECK(a.status == 0);
    CHECK(a.out == "a=2 b=8\n");
    const auto b = run({"rates", "--kind", "b", "--p", "3", "--q", "1", "--alpha", "2", "--d", "2"});
    CHECK(b.status != 0);
    CHECK(b.err.find("regime_not_covered") != std::string::npos);
    // one machine-parsable line
    CHECK(b.err.find('\n') == b.err.size() - 1);
}

TEST_CASE("json format") {
    const auto r = run({"widths", "--alpha", "2", "--d", "1", "--n-max", "3", "--format", "json"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][2]["s_n"].get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(j["rows"][0]["ratio_to_asymptotic"].is_null());
}

TEST_CASE("commands are deterministic") {
    const std::vector<std::vector<std::string>> cmds{
        {"nikolskii", "--m-max", "16", "--trials", "20", "--seed", "7"},
        {"bernstein", "--alpha", "1", "--d", "1", "--xi", "4"},
        {"bernstein", "--alpha", "1", "--d", "3", "--xi", "2", "--seed", "3"},
        {"envelope", "--n", "100", "--n", "1000"},
        {"approx", "--alpha", "2", "--d", "1", "--xi", "5"},
    };
    for (const auto& c : cmds) {
        const auto a = run(c);
        const auto b = run(c);
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("resource cap from the environment") {
    ::setenv("HW_CAP", "10", 1);
    const auto r = run({"widths", "--alpha", "1", "--d", "2", "--n-max", "1000"});
    ::unsetenv("HW_CAP");
    CHECK(r.status != 0);
    CHECK(r.err.find("resource_limit") != std::string::npos);
    CHECK(run({"widths", "--alpha", "1", "--d", "2", "--n-max", "1000"}).status == 0);
}
