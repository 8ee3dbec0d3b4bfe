#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>

#include "test_util.hpp"
#include "zladder/orthosys.hpp"
#include "zladder/roots.hpp"

using namespace zladder;
using hlgrid::CumulativeZGrid;
using ladder::Ladder;
using ladder::LadderConfig;
using namespace zladder::orthosys;

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

constexpr double kT = 500.0;

}  // namespace

TEST_CASE("Legendre recurrence") {
    CHECK(legendre_eval(0, 0.37) == 1.0);
    CHECK(legendre_eval(1, 0.37) == 0.37);
    CHECK(legendre_eval(2, 0.5) == Catch::Approx(-0.125).epsilon(1e-15));
    for (int n = 0; n <= 10; ++n) {
        const double nn = quad::adaptive(
            [n](double t) {
                const double p = legendre_eval(n, t);
                return p * p;
            },
            -1.0, 1.0, 1e-12, 1e-14);
        CHECK(nn == Catch::Approx(2.0 / (2.0 * n + 1.0)).epsilon(1e-11));
    }
}

TEST_CASE("base Gram matrices are orthogonal with known norms") {
    const auto leg = gram_of_base(BaseSystem::legendre(), 8);
    CHECK(leg.max_offdiag_ratio <= 1e-10);
    for (int n = 0; n < 8; ++n)
        CHECK(leg.at(n, n) == Catch::Approx(2.0 / (2.0 * n + 1.0)).epsilon(1e-12));

    const auto trig = gram_of_base(BaseSystem::trigonometric(0.0, 1.5), 7);
    CHECK(trig.max_offdiag_ratio <= 1e-10);
    CHECK(trig.at(0, 0) == Catch::Approx(3.0).epsilon(1e-12));
    for (int n = 1; n < 7; ++n)
        CHECK(trig.at(n, n) == Catch::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("affine segment map hits endpoints exactly") {
    auto& L = shared_ladder();
    const auto spec = make_iterated_spec(BaseSystem::legendre(), 1, kT, L);
    const auto& seg = spec.chain.segments[1];
    CHECK(spec.affine_to_segment(-1.0) == seg.lo);
    CHECK(spec.affine_to_segment(1.0) == seg.hi);
    CHECK(spec.affine_to_segment(0.0) ==
          Catch::Approx(0.5 * (seg.lo + seg.hi)).epsilon(1e-14));
    CHECK_THROWS_AS(spec.affine_to_segment(1.5), range_error_);
}

TEST_CASE("iterated spec admissibility and external pre-check") {
    auto& L = shared_ladder();
    CHECK_THROWS_AS(make_iterated_spec(BaseSystem::legendre(), 0, kT, L),
                    std::domain_error);
    // interval of half-length 20 is too long at T = 500
    CHECK_THROWS_AS(
        make_iterated_spec(BaseSystem::trigonometric(0.0, 20.0), 1, kT, L),
        std::domain_error);
    // orthogonal external base (Legendre behind a function) passes
    auto ok = BaseSystem::make_external(
        [](int n, double t) { return legendre_eval(n, t); }, -1.0, 1.0);
    CHECK_NOTHROW(make_iterated_spec(ok, 1, kT, L));
    // monomials are not L2-orthogonal: rejected
    auto bad = BaseSystem::make_external(
        [](int n, double t) { return std::pow(t, n); }, -1.0, 1.0);
    CHECK_THROWS_AS(make_iterated_spec(bad, 1, kT, L), invariant_error);
}

TEST_CASE("iterated evaluation: weight relation and endpoint anchoring") {
    auto& L = shared_ladder();
    for (int p : {1, 2}) {
        const auto spec = make_iterated_spec(BaseSystem::legendre(), p, kT, L);
        for (double t : {-1.0, -0.4, 0.2, 0.9}) {
            const double f0 = iterated_eval(0, t, spec, L);
            CHECK(f0 * f0 == weight_eval(t, spec, L));  // bitwise by design
            CHECK(weight_eval(t, spec, L) >= 0.0);
        }
        // at t = a the pulled-back argument is exactly a (round trip of the
        // reverse point), so f_n(a) factors out
        const double wa = std::sqrt(weight_eval(-1.0, spec, L));
        for (int n = 1; n <= 3; ++n)
            CHECK(iterated_eval(n, -1.0, spec, L) ==
                  Catch::Approx(legendre_eval(n, -1.0) * wa).margin(1e-6 * wa));
    }
}

TEST_CASE("weight vanishes where an orbit image hits a zeta zero") {
    auto& L = shared_ladder();
    const auto spec = make_iterated_spec(BaseSystem::legendre(), 1, kT, L);
    const auto& seg = spec.chain.segments[1];
    // locate a zero of Z inside the rho-segment
    double lo = seg.lo, hi = seg.hi, root = 0.0;
    bool found = false;
    double prev_t = lo, prev_z = specfun::hardy_z(lo);
    for (double t = lo; t <= hi && !found; t += 0.02) {
        const double z = specfun::hardy_z(t);
        if ((prev_z > 0.0) != (z > 0.0)) {
            root = roots::brent([](double u) { return specfun::hardy_z(u); },
                                prev_t, t);
            found = true;
        }
        prev_t = t;
        prev_z = z;
    }
    REQUIRE(found);
    const double t_star = -1.0 + (root - seg.lo) / spec.scale();
    CHECK(std::fabs(iterated_eval(2, t_star, spec, L)) < 1e-6);
    CHECK(weight_eval(t_star, spec, L) < 1e-10);
}

TEST_CASE("weight magnitude tracks 1/ln^p T") {
    auto& L = shared_ladder();
    for (int p : {1, 2}) {
        const auto spec = make_iterated_spec(BaseSystem::legendre(), p, kT, L);
        for (double t : {-0.7, 0.1, 0.8}) {
            const double w = weight_eval(t, spec, L);
            // product of |zeta|^2 along the orbit
            double prod = 1.0, cur = spec.affine_to_segment(t);
            for (int r = 0; r < p; ++r) {
                prod *= specfun::zeta_modulus_sq(cur);
                cur = L.phi1_fast(cur);
            }
            if (prod < 1e-8) continue;  // skip near-zero orbits
            const double ratio = w * std::pow(std::log(kT), p) / prod;
            CHECK(ratio > 0.5);
            CHECK(ratio < 2.0);
        }
    }
}

TEST_CASE("automorphism fixes endpoints and increases") {
    auto& L = shared_ladder();
    for (int p : {1, 2, 3}) {
        const auto spec = make_iterated_spec(BaseSystem::legendre(), p, kT, L);
        INFO("p = " << p);
        CHECK(std::fabs(automorphism_w(-1.0, spec, L) - (-1.0)) <= 1e-6);
        CHECK(std::fabs(automorphism_w(1.0, spec, L) - 1.0) <= 1e-6);
        double prev = automorphism_w(-1.0, spec, L);
        for (int i = 1; i <= 100; ++i) {
            const double t = -1.0 + 2.0 * i / 100.0;
            const double w = automorphism_w(t, spec, L);
            CHECK(w > prev);
            CHECK(w >= -1.0 - 1e-9);
            CHECK(w <= 1.0 + 1e-9);
            prev = w;
        }
    }
}

TEST_CASE("iterated systems stay orthogonal with transported norms") {
    auto& L = shared_ladder();
    for (const auto& base :
         {BaseSystem::legendre(), BaseSystem::trigonometric(-1.0, 1.0)}) {
        for (int p : {1, 2, 3}) {
            const auto spec = make_iterated_spec(base, p, kT, L);
            const auto rep = gram_of_iterated(spec, 5, L);
            INFO("kind = " << static_cast<int>(base.kind) << ", p = " << p);
            CHECK(rep.max_offdiag_ratio <= 1e-4);
            for (int n = 0; n < 5; ++n)
                CHECK(rep.at(n, n) / (rep.diag_scale * base.norm_sq(n)) ==
                      Catch::Approx(1.0).epsilon(1e-3));
        }
    }
}

TEST_CASE("orthogonality sharpens as quadrature densifies") {
    auto& L = shared_ladder();
    const auto spec = make_iterated_spec(BaseSystem::legendre(), 1, kT, L);
    auto eval_all = [&spec, &L](double t, std::vector<double>& out) {
        const double w = std::sqrt(weight_eval(t, spec, L));
        const double arg = automorphism_w(t, spec, L);
        for (std::size_t n = 0; n < out.size(); ++n)
            out[n] = legendre_eval(static_cast<int>(n),
                                   std::clamp(arg, -1.0, 1.0)) * w;
    };
    const auto spec_probe = [&spec, &L](double ta, double tb) {
        double ca = spec.affine_to_segment(ta), cb = spec.affine_to_segment(tb);
        double span = cb - ca;
        for (int r = 0; r < spec.p; ++r) {
            ca = L.phi1_fast(ca);
            cb = L.phi1_fast(cb);
            span = std::max(span, cb - ca);
        }
        return span;
    };
    GramOptions coarse, fine;
    coarse.osc_scale_t = kT;
    coarse.arc_fraction = 1.0;
    coarse.span_probe = spec_probe;
    fine.osc_scale_t = kT;
    fine.arc_fraction = 0.125;
    fine.span_probe = spec_probe;
    const auto rc = gram_matrix(eval_all, 4, -1.0, 1.0, coarse);
    const auto rf = gram_matrix(eval_all, 4, -1.0, 1.0, fine);
    CHECK(rf.max_offdiag_ratio <= rc.max_offdiag_ratio * 1.5);
    CHECK(rf.max_offdiag_ratio <= 1e-4);
}

TEST_CASE("depth-2 composition stays orthogonal") {
    auto& L = shared_ladder();
    const auto s1 = make_iterated_spec(BaseSystem::legendre(), 1, kT, L);
    std::vector<IteratedSystemSpec> specs{s1, s1};
    // single-stage list degenerates to iterated_eval bitwise
    CHECK(composed_eval(2, 0.3, {s1}, L) == iterated_eval(2, 0.3, s1, L));
    const auto rep = gram_of_composed(specs, 4, L);
    CHECK(rep.max_offdiag_ratio <= 1e-3);
    for (int n = 0; n < 4; ++n)
        CHECK(rep.at(n, n) / (rep.diag_scale * 2.0 / (2.0 * n + 1.0)) ==
              Catch::Approx(1.0).epsilon(5e-3));
    // inner stage endpoints feed the outer stage exactly
    CHECK(std::fabs(composed_eval(0, -1.0, specs, L) -
                    std::sqrt(weight_eval(-1.0, s1, L)) *
                        std::sqrt(weight_eval(-1.0, s1, L))) < 1e-6);
}
