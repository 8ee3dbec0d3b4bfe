#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <thread>

#include "test_util.hpp"
#include "zladder/ladder.hpp"

using namespace zladder;
using hlgrid::CumulativeZGrid;
using ladder::Ladder;
using ladder::LadderConfig;

namespace {

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

Ladder& shared_ladder() {
    static Ladder l{shared_grid(), [] {
                        LadderConfig c;
                        c.root_rel_tol = 1e-12;
                        return c;
                    }()};
    return l;
}

}  // namespace

TEST_CASE("LadderConfig validation") {
    LadderConfig c;
    c.a = 6.5;
    CHECK_THROWS_AS(c.validate(), std::domain_error);
    c = {};
    c.root_rel_tol = -1.0;
    CHECK_THROWS_AS(c.validate(), std::domain_error);
}

TEST_CASE("solve_phi meets the defining-equation residual") {
    auto& L = shared_ladder();
    const auto& g = shared_grid();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pick(150.0, 700.0);
    for (int k = 0; k < 10; ++k) {
        const double T = pick(rng);
        const double x = L.solve_phi(T);
        const double F = g.hl_integral(T);
        INFO("T = " << T);
        CHECK(std::fabs(g.damped_integral(x, L.config().a) - F) <=
              L.config().root_rel_tol * F);
        CHECK(x > T);
        CHECK(x < 2.0 * T);
    }
    CHECK_THROWS_AS(L.solve_phi(50.0), std::domain_error);
}

TEST_CASE("phi and phi1 are strictly increasing; memo residuals hold") {
    auto& L = shared_ladder();
    const auto& g = shared_grid();
    double prev_phi = 0.0, prev_p1 = 0.0;
    for (double T = 120.0; T <= 720.0; T += 40.0) {
        const double x = L.solve_phi(T);
        const double p1 = L.phi1(T);
        CHECK(x > prev_phi);
        CHECK(p1 > prev_p1);
        CHECK(p1 == 0.5 * x);
        CHECK(p1 < T);
        // memoized pair obeys the residual bound as stated
        CHECK(std::fabs(g.damped_integral(x, L.config().a) - g.hl_integral(T)) <=
              L.config().root_rel_tol * g.hl_integral(T));
        prev_phi = x;
        prev_p1 = p1;
    }
    CHECK(L.memo_size() >= 16);
}

TEST_CASE("complementarity against the prime counter") {
    auto& L = shared_ladder();
    for (double T : {400.0, 600.0, 750.0}) {
        const double lhs = T - L.phi1(T);
        const double rhs =
            kConst.one_minus_c * static_cast<double>(specfun::prime_count(T));
        INFO("T = " << T);
        CHECK(lhs / rhs > 0.8);
        CHECK(lhs / rhs < 1.2);
    }
}

TEST_CASE("phi1_inverse round trip and ordering") {
    auto& L = shared_ladder();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pick(150.0, 600.0);
    double prev = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double y = pick(rng);
        const double t = L.phi1_inverse(y);
        INFO("y = " << y);
        CHECK(std::fabs(L.phi1(t) - y) <= L.config().root_rel_tol * y);
        CHECK(t > y);
    }
    for (double y : {200.0, 300.0, 400.0, 500.0}) {
        const double t = L.phi1_inverse(y);
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("potential: boundary term is negligible, ratio tracks (1/2) ln") {
    auto& L = shared_ladder();
    const auto& g = shared_grid();
    for (double x : {200.0, 600.0, 1200.0}) {
        const double full = L.phi_prime_potential(x);
        const double first = g.weighted_first_moment(x, L.config().a);
        CHECK(full > 0.0);
        CHECK(full - first >= 0.0);
        CHECK(full - first <= 1e-20 * first);
        CHECK(full / (0.5 * std::log(x)) > 0.7);
        CHECK(full / (0.5 * std::log(x)) < 1.1);
    }
}

TEST_CASE("omega positive, in band, and grid-resolution stable") {
    auto& L = shared_ladder();
    for (double t : {150.0, 400.0, 700.0}) {
        const double w = L.omega(t);
        CHECK(w > 0.0);
        CHECK(w / std::log(t) > 0.7);
        CHECK(w / std::log(t) < 1.3);
    }
    // same omega from a finer grid
    hlgrid::QuadratureSpec fine;
    fine.panels_per_oscillation = 16;
    const auto g16 = hlgrid::build_grid(2000.0, fine, 400.0);
    Ladder L16{g16, [] {
                   LadderConfig c;
                   c.root_rel_tol = 1e-12;
                   return c;
               }()};
    for (double t : {200.0, 350.0}) {
        INFO("t = " << t);
        CHECK(L16.omega(t) == Catch::Approx(L.omega(t)).epsilon(1e-6));
    }
}

TEST_CASE("z_tilde_sq: non-negative, vanishes at a zeta zero") {
    auto& L = shared_ladder();
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> pick(101.0, 780.0);
    for (int k = 0; k < 100; ++k) CHECK(L.z_tilde_sq(pick(rng)) >= 0.0);
    // first zero ordinate above T0 = 100 from the frozen table
    const auto zeros = testutil::read_csv2("zeta_zeros.csv");
    double gamma = 0.0;
    for (const auto& [n, gz] : zeros)
        if (gz > 100.0) {
            gamma = gz;
            break;
        }
    REQUIRE(gamma > 0.0);
    CHECK(L.z_tilde_sq(gamma) < 1e-8);
}

TEST_CASE("derivative identity: ztilde^2 vs central differences of phi1") {
    auto& L = shared_ladder();
    const double h = 1e-3;
    int checked = 0;
    for (double t = 610.0; t <= 700.0 && checked < 6; t += 7.3) {
        if (std::fabs(specfun::hardy_z(t)) < 0.5) continue;
        const double cd = (L.phi1(t + h) - L.phi1(t - h)) / (2.0 * h);
        const double zt = L.z_tilde_sq(t);
        INFO("t = " << t);
        CHECK(cd == Catch::Approx(zt).epsilon(1e-3));
        ++checked;
    }
    CHECK(checked == 6);
}

TEST_CASE("fast paths track the certified ones") {
    auto& L = shared_ladder();
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> pick(120.0, 760.0);
    for (int k = 0; k < 15; ++k) {
        const double T = pick(rng);
        const double exact = L.solve_phi(T);
        INFO("T = " << T);
        CHECK(std::fabs(L.phi_fast(T) - exact) <= 1e-8 * exact);
        CHECK(L.omega_fast(T) == Catch::Approx(L.omega(T)).epsilon(1e-8));
        if (L.z_tilde_sq(T) > 1e-12)
            CHECK(L.z_tilde_sq_fast(T) ==
                  Catch::Approx(L.z_tilde_sq(T)).epsilon(1e-7));
    }
}

TEST_CASE("representation residual is affine in c0; fit is stable") {
    const auto& g = shared_grid();
    LadderConfig base;
    base.root_rel_tol = 1e-12;
    Ladder L1{g, base};
    LadderConfig shifted = base;
    shifted.c0 += 1.0;
    Ladder L2{g, shifted};
    const double r1 = L1.hl_representation_residual(500.0);
    const double r2 = L2.hl_representation_residual(500.0);
    CHECK(r2 - r1 == Catch::Approx(-1.0).epsilon(1e-12));

    Ladder Lf{g, base};
    const double c0 = Lf.fit_c0({350.0, 450.0, 560.0, 700.0});
    CHECK(std::fabs(c0 - kConst.c0_estimate) < 0.05);
    for (double T : {400.0, 650.0})
        CHECK(std::fabs(Lf.hl_representation_residual(T)) < 0.05);
}

TEST_CASE("concurrent solves of the same T agree") {
    Ladder L{shared_grid(), {}};
    double a = 0.0, b = 0.0;
    std::thread t1([&] { a = L.solve_phi(432.1); });
    std::thread t2([&] { b = L.solve_phi(432.1); });
    t1.join();
    t2.join();
    CHECK(a == b);
    CHECK(L.memo_size() == 1);
}
