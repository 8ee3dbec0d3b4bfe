#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "test_util.hpp"
#include "zladder/grid.hpp"
#include "zladder/quadrature.hpp"

using namespace zladder;
using hlgrid::CumulativeZGrid;

namespace {

// One shared grid per test binary, persisted so repeated runs reload.
const CumulativeZGrid& shared_grid() {
    static const CumulativeZGrid g = [] {
        const char* cache = "test_grid_cache.bin";
        if (std::ifstream probe(cache); probe) {
            auto loaded = CumulativeZGrid::load(cache);
            hlgrid::GridConfig want;
            want.t_max = 2000.0;
            want.solve_t_max = 800.0;
            if (loaded.config.compatible(want)) return loaded;
        }
        auto built = hlgrid::build_grid(2000.0, {}, 800.0);
        built.save(cache);
        return built;
    }();
    return g;
}

double z2(double t) {
    return specfun::detail::z_unchecked(t, shared_grid().config.fn) *
           specfun::detail::z_unchecked(t, shared_grid().config.fn);
}

}  // namespace

TEST_CASE("QuadratureSpec validation") {
    hlgrid::QuadratureSpec s;
    s.panels_per_oscillation = 3;
    CHECK_THROWS_AS(s.validate(), std::domain_error);
    s = {};
    s.rel_tol = 0.0;
    CHECK_THROWS_AS(s.validate(), std::domain_error);
}

TEST_CASE("grid node layout invariants") {
    const auto& g = shared_grid();
    REQUIRE(g.panel_lo.front() == 0.0);
    REQUIRE(g.panel_cum.front() == 0.0);
    const int ppo = g.config.spec.panels_per_oscillation;
    for (std::size_t i = 1; i < g.node_t.size(); ++i) {
        REQUIRE(g.node_t[i] > g.node_t[i - 1]);
        const double t = g.node_t[i];
        const double osc = kTwoPi / std::max(1.0, std::log(std::max(t, 1.0) / kTwoPi));
        REQUIRE(g.node_t[i] - g.node_t[i - 1] <= osc / ppo * (1.0 + 1e-12));
    }
    for (std::size_t i = 1; i < g.node_cum.size(); ++i)
        REQUIRE(g.node_cum[i] >= g.node_cum[i - 1]);
    for (std::size_t i = 1; i < g.panel_cum.size(); ++i)
        REQUIRE(g.panel_cum[i] >= g.panel_cum[i - 1]);
}

TEST_CASE("F(T) against the mpmath reference integrals") {
    const auto& g = shared_grid();
    for (const auto& [T, F] : testutil::read_csv2("hl_values.csv")) {
        INFO("T = " << T);
        CHECK(g.hl_integral(T) == Catch::Approx(F).epsilon(2e-10));
    }
}

TEST_CASE("hl_integral agrees with from-scratch adaptive quadrature") {
    const auto& g = shared_grid();
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> pick(1.0, 1900.0);
    for (int k = 0; k < 20; ++k) {
        const double T = pick(rng);
        const double oracle = quad::adaptive(z2, 0.0, T, 1e-10, 1e-10);
        INFO("T = " << T);
        CHECK(g.hl_integral(T) ==
              Catch::Approx(oracle).epsilon(g.config.spec.rel_tol));
    }
}

TEST_CASE("hl_integral basics") {
    const auto& g = shared_grid();
    CHECK(g.hl_integral(0.0) == 0.0);
    CHECK(g.hl_integral(g.panel_lo[5]) == g.panel_cum[5]);
    double prev = 0.0;
    for (double T : {10.0, 40.0, 300.0, 800.0, 1500.0, 1999.0}) {
        const double F = g.hl_integral(T);
        CHECK(F >= prev);
        prev = F;
    }
    CHECK_THROWS_AS(g.hl_integral(-1.0), range_error_);
    CHECK_THROWS_AS(g.hl_integral(1e5), range_error_);
}

TEST_CASE("hl_asymptotic") {
    CHECK(hlgrid::hl_asymptotic(100.0) == Catch::Approx(292.1724).margin(1e-3));
    CHECK_THROWS_AS(hlgrid::hl_asymptotic(std::exp(1.0)), std::domain_error);
    // Ingham-scaled residual stays small at unit-test scale
    const auto& g = shared_grid();
    for (double T : {100.0, 1000.0}) {
        const double r = std::fabs(g.hl_integral(T) - hlgrid::hl_asymptotic(T)) /
                         (std::sqrt(T) * std::log(T));
        INFO("T = " << T);
        CHECK(r <= 2.0);
    }
}

TEST_CASE("damped integral: monotone in x and oracle-accurate") {
    const auto& g = shared_grid();
    double prev = 0.0;
    for (double x = 100.0; x <= 400.0; x += 30.0) {
        const double v = g.damped_integral(x, 7.0);
        CHECK(v > prev);
        prev = v;
    }
    const double x = 200.0;
    const double cut = hlgrid::damping_cutoff(x, g.config.spec.abs_tol);
    const double oracle = quad::adaptive(
        [x](double t) { return z2(t) * std::exp(-2.0 * t / x); }, 0.0, cut,
        1e-11, 1e-12);
    CHECK(g.damped_integral(x, 7.0) == Catch::Approx(oracle).epsilon(1e-8));

    const double w_oracle =
        2.0 / (x * x) *
        quad::adaptive([x](double t) { return t * z2(t) * std::exp(-2.0 * t / x); },
                       0.0, cut, 1e-11, 1e-12);
    CHECK(g.weighted_first_moment(x, 7.0) ==
          Catch::Approx(w_oracle).epsilon(1e-8));
    CHECK(g.weighted_first_moment(x, 7.0) > 0.0);
}

TEST_CASE("damping truncation is invariant and covered") {
    const auto& g = shared_grid();
    const double x = 150.0;
    const double cut = hlgrid::damping_cutoff(x, g.config.spec.abs_tol);
    const double v1 = g.damped_scan(x, 7.0).plain;
    const double v2 = g.damped_scan(x, 7.0, 2.0 * cut).plain;
    CHECK(std::fabs(v2 - v1) < g.config.spec.abs_tol);
    // factor bound: exp(-2 mu_a/x) = x^{-2a} is already ~1e-28 at x = 100
    CHECK(std::exp(-2.0 * hlgrid::mu_a(7.0, 100.0) / 100.0) < 1e-28);
    CHECK_THROWS_AS(g.damped_scan(5000.0, 7.0), range_error_);
    CHECK_THROWS_AS(g.damped_scan(1.0, 7.0), std::domain_error);
}

TEST_CASE("weighted first moment tracks (1/2) ln x") {
    const auto& g = shared_grid();
    double prev_ratio = 0.0;
    for (double x : {200.0, 500.0, 1200.0}) {
        const double ratio =
            g.weighted_first_moment(x, 7.0) / (0.5 * std::log(x));
        CHECK(ratio > 0.75);
        CHECK(ratio < 1.1);
        CHECK(ratio > prev_ratio);  // slow approach to 1 from below
        prev_ratio = ratio;
    }
}

TEST_CASE("self-convergence when doubling panels_per_oscillation") {
    hlgrid::QuadratureSpec s8, s16;
    s16.panels_per_oscillation = 16;
    const auto g8 = hlgrid::build_grid(300.0, s8, 0.0);
    const auto g16 = hlgrid::build_grid(300.0, s16, 0.0);
    const double f8 = g8.hl_integral(300.0), f16 = g16.hl_integral(300.0);
    CHECK(std::fabs(f16 - f8) < s8.rel_tol * f8);
}

TEST_CASE("cache file round-trips byte-exactly") {
    const auto& g = shared_grid();
    g.save("grid_a.bin");
    const auto loaded = CumulativeZGrid::load("grid_a.bin");
    loaded.save("grid_b.bin");
    std::ifstream a("grid_a.bin", std::ios::binary), b("grid_b.bin", std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
    const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
    REQUIRE(!bytes_a.empty());
    CHECK(bytes_a == bytes_b);
    for (double T : {17.3, 444.0, 1998.5})
        CHECK(loaded.hl_integral(T) == g.hl_integral(T));
    CHECK(loaded.damped_scan(123.0, 7.5).plain == g.damped_scan(123.0, 7.5).plain);
    CHECK(loaded.config.compatible(g.config));
    hlgrid::GridConfig other = g.config;
    other.spec.panels_per_oscillation = 16;
    CHECK(!loaded.config.compatible(other));
    std::remove("grid_a.bin");
    std::remove("grid_b.bin");
}

TEST_CASE("node cap raises a resource error") {
    hlgrid::GridConfig cfg;
    cfg.t_max = 2000.0;
    cfg.solve_t_max = 0.0;
    cfg.node_cap = 100;
    CHECK_THROWS_AS(CumulativeZGrid::build(cfg), resource_error);
}
