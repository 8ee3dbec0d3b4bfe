#pragma once

// Acceptance verification suites.  Each suite checks one published property
// at desk scale and reports a single pass/fail with its measured value; the
// CLI `verify` subcommand and the standalone acceptance runner both drive
// these.  Where a property is asymptotic the bound below is the agreed
// finite-scale band, pinned here in code.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "zladder/constants.hpp"
#include "zladder/detail/reference_values.hpp"
#include "zladder/grid.hpp"
#include "zladder/iterations.hpp"
#include "zladder/ladder.hpp"
#include "zladder/orthosys.hpp"
#include "zladder/roots.hpp"
#include "zladder/specfun.hpp"

namespace zladder::verify {

struct CriterionResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

inline std::string format_result(const CriterionResult& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s %-12s (%6.1fs)  %s",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                  r.detail.c_str());
    return buf;
}

namespace detail_v {

inline double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

inline std::uint64_t config_hash(const hlgrid::GridConfig& c) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(c.t_max);
    mix(c.solve_t_max);
    mix(c.spec.rel_tol);
    mix(c.spec.abs_tol);
    mix(static_cast<double>(c.spec.panels_per_oscillation));
    mix(c.fn.t_min);
    mix(c.fn.theta_crossover);
    mix(c.fn.z_crossover);
    return h;
}

template <class Fn>
CriterionResult timed(const std::string& name, Fn&& fn) {
    CriterionResult r;
    r.name = name;
    const double t0 = now_seconds();
    try {
        fn(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = now_seconds() - t0;
    return r;
}

}  // namespace detail_v

// Shared pipeline state: one cached grid + ladder per run.
struct Context {
    std::string cache_dir = ".";
    int threads = 0;
    bool slow = false;
    double grid_t_max = 2e4;
    double grid_solve_t_max = 2e4;

    std::shared_ptr<const hlgrid::CumulativeZGrid> big;
    std::shared_ptr<ladder::Ladder> lad;       // default tolerance
    std::shared_ptr<ladder::Ladder> lad_tight; // for derivative checks
    double grid_seconds = 0.0;

    static std::string cache_path_for(const hlgrid::GridConfig& cfg,
                                      const std::string& dir) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(
                          detail_v::config_hash(cfg)));
        return dir + "/zladder_grid_" + buf + ".bin";
    }

    const hlgrid::CumulativeZGrid& grid() {
        if (!big) {
            hlgrid::GridConfig cfg;
            cfg.t_max = grid_t_max;
            cfg.solve_t_max = grid_solve_t_max;
            cfg.threads = threads;
            const std::string path = cache_path_for(cfg, cache_dir);
            const double t0 = detail_v::now_seconds();
            bool loaded = false;
            if (std::ifstream probe(path); probe) {
                try {
                    auto g = hlgrid::CumulativeZGrid::load(path);
                    if (g.config.compatible(cfg)) {
                        big = std::make_shared<hlgrid::CumulativeZGrid>(
                            std::move(g));
                        loaded = true;
                    } else {
                        std::fprintf(stderr,
                                     "verify: cache %s has a different spec; "
                                     "rebuilding\n",
                                     path.c_str());
                    }
                } catch (const std::exception& e) {
                    std::fprintf(stderr, "verify: cache %s unreadable (%s); "
                                         "rebuilding\n",
                                 path.c_str(), e.what());
                }
            }
            if (!loaded) {
                auto g = hlgrid::CumulativeZGrid::build(cfg);
                g.save(path);
                big = std::make_shared<hlgrid::CumulativeZGrid>(std::move(g));
            }
            grid_seconds = detail_v::now_seconds() - t0;
        }
        return *big;
    }

    ladder::Ladder& ladder_() {
        if (!lad) lad = std::make_shared<ladder::Ladder>(grid());
        return *lad;
    }

    ladder::Ladder& ladder_tight() {
        if (!lad_tight) {
            ladder::LadderConfig c;
            c.root_rel_tol = 1e-12;
            lad_tight = std::make_shared<ladder::Ladder>(grid(), c);
        }
        return *lad_tight;
    }
};

// 1. Z(t) vs the frozen high-precision oracle; first three zeros recovered.
inline CriterionResult run_specfun(Context&) {
    return detail_v::timed("specfun", [](CriterionResult& r) {
        double worst = 0.0;
        int points = 0;
        for (const auto& [t, zref] : zladder::detail::kRefZ) {
            if (t > 5000.0) continue;
            worst = std::max(worst, std::fabs(specfun::hardy_z(t) - zref));
            ++points;
        }
        double worst_zero = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double g = zladder::detail::kRefZeros[i].y;
            const double root = roots::brent(
                [](double t) { return specfun::hardy_z(t); }, g - 0.4, g + 0.4);
            worst_zero = std::max(worst_zero, std::fabs(root - g));
        }
        r.pass = worst <= 1e-8 && worst_zero <= 1e-6 && points >= 50;
        std::ostringstream os;
        os << "max|Z-oracle|=" << worst << " (bound 1e-8, " << points
           << " pts); zero recovery=" << worst_zero << " (bound 1e-6)";
        r.detail = os.str();
    });
}

// 2. Hardy-Littlewood residual in Ingham's scaling, own head grid to 2e4.
inline CriterionResult run_hl(Context& ctx) {
    return detail_v::timed("hl", [&ctx](CriterionResult& r) {
        hlgrid::GridConfig cfg;
        cfg.t_max = 2e4;
        cfg.solve_t_max = 0.0;
        cfg.threads = ctx.threads;
        const auto g = hlgrid::CumulativeZGrid::build(cfg);
        double worst = 0.0;
        for (double T : {1e2, 1e3, 1e4}) {
            const double ratio =
                std::fabs(g.hl_integral(T) - hlgrid::hl_asymptotic(T)) /
                (std::sqrt(T) * std::log(T));
            worst = std::max(worst, ratio);
        }
        r.pass = worst <= 2.0;
        std::ostringstream os;
        os << "max |R(T)|/(sqrt(T) lnT)=" << worst
           << " (bound 2) over T in {1e2,1e3,1e4}";
        r.detail = os.str();
    });
}

// 3. Defining equation: residual at 10 log-spaced T, phi increasing.
inline CriterionResult run_equation(Context& ctx) {
    return detail_v::timed("equation", [&ctx](CriterionResult& r) {
        auto& L = ctx.ladder_();
        const auto& g = ctx.grid();
        double worst = 0.0, prev = 0.0;
        bool increasing = true;
        for (int i = 0; i < 10; ++i) {
            const double T =
                1e3 * std::pow(10.0, static_cast<double>(i) / 9.0);
            const double x = L.solve_phi(T);
            const double F = g.hl_integral(T);
            worst = std::max(
                worst, std::fabs(g.damped_integral(x, L.config().a) - F) / F);
            if (x <= prev) increasing = false;
            prev = x;
        }
        r.pass = worst <= 1e-9 && increasing;
        std::ostringstream os;
        os << "max residual=" << worst << " (bound 1e-9); phi increasing: "
           << (increasing ? "yes" : "no");
        r.detail = os.str();
    });
}

// 4. ztilde^2 vs central differences of phi1 at 50 points with |Z| > 0.1.
inline CriterionResult run_derivative(Context& ctx) {
    return detail_v::timed("derivative", [&ctx](CriterionResult& r) {
        auto& L = ctx.ladder_tight();
        const double h = 1e-3;
        double worst = 0.0;
        int used = 0;
        for (double t = 2000.0; t < 1.4e4 && used < 50; t *= 1.013) {
            if (std::fabs(specfun::hardy_z(t)) <= 0.5) continue;
            const double cd = (L.phi1(t + h) - L.phi1(t - h)) / (2.0 * h);
            const double zt = L.z_tilde_sq(t);
            worst = std::max(worst, std::fabs(cd - zt) / zt);
            ++used;
        }
        r.pass = worst <= 1e-3 && used == 50;
        std::ostringstream os;
        os << "max rel dev=" << worst << " (bound 1e-3) at " << used
           << " points with |Z|>0.5";
        r.detail = os.str();
    });
}

// 5. Complementarity ratio band and trend toward 1.
inline CriterionResult run_complement(Context& ctx) {
    return detail_v::timed("complement", [&ctx](CriterionResult& r) {
        auto& L = ctx.ladder_();
        std::vector<double> Ts{1e3, 1e4, 2e4};
        std::vector<double> dev;
        for (const double T : Ts) {
            const double ratio =
                (L.phi1(T) + kConst.one_minus_c *
                                 static_cast<double>(specfun::prime_count(T))) /
                T;
            dev.push_back(std::fabs(ratio - 1.0));
        }
        const bool band = dev[1] <= 0.05;
        const bool trend = dev.back() < dev.front();
        r.pass = band && trend;
        std::ostringstream os;
        os << "|ratio-1| at {1e3,1e4,2e4} = {" << dev[0] << ", " << dev[1]
           << ", " << dev[2] << "} (band 0.05 at 1e4; endpoint trend "
           << (trend ? "down" : "NOT down") << ")";
        r.detail = os.str();
    });
}

// 6. Reverse-chain geometry at T = 1e4.
inline CriterionResult run_chain(Context& ctx) {
    return detail_v::timed("chain", [&ctx](CriterionResult& r) {
        auto& L = ctx.ladder_();
        const double T = 1e4, U = T / (20.0 * std::log(T));
        const auto chain = iters::ReverseChain::build(T, U, 3, L);
        bool ordered = true;
        double worst_image = 0.0, worst_gap_lo = 1e9, worst_gap_hi = 0.0;
        for (int k = 1; k <= 3; ++k) {
            const auto& s = chain.segments[static_cast<std::size_t>(k)];
            const auto& p = chain.segments[static_cast<std::size_t>(k - 1)];
            ordered = ordered && p.hi < s.lo;
            worst_image = std::max(
                worst_image, std::max(std::fabs(L.phi1(s.lo) - p.lo),
                                      std::fabs(L.phi1(s.hi) - p.hi)));
            const double ratio =
                chain.gap(k) / (kConst.one_minus_c * T / std::log(T));
            worst_gap_lo = std::min(worst_gap_lo, ratio);
            worst_gap_hi = std::max(worst_gap_hi, ratio);
        }
        r.pass = ordered && worst_image <= 1e-6 * T && worst_gap_lo >= 0.75 &&
                 worst_gap_hi <= 1.25;
        std::ostringstream os;
        os << "ordering " << (ordered ? "strict" : "BROKEN")
           << "; max image endpoint err=" << worst_image << " (bound "
           << 1e-6 * T << "); gap ratios in [" << worst_gap_lo << ", "
           << worst_gap_hi << "] (band [0.75,1.25])";
        r.detail = os.str();
    });
}

// 7. The depth-k transform identity for g in {1, t, t^2, cos t}, k <= 3.
inline CriterionResult run_lemma7(Context& ctx) {
    return detail_v::timed("lemma7", [&ctx](CriterionResult& r) {
        auto& L = ctx.ladder_();
        const double T = 1e4, U = 20.0;
        double worst = 0.0;
        const std::function<double(double)> gs[] = {
            [](double) { return 1.0; },
            [](double t) { return t; },
            [](double t) { return t * t; },
            [](double t) { return std::cos(t); },
        };
        for (int k = 1; k <= 3; ++k)
            for (const auto& g : gs) {
                const auto res = iters::transform_integral(g, T, U, k, L);
                worst = std::max(worst,
                                 std::fabs(res.rhs - res.lhs) /
                                     std::max(std::fabs(res.lhs), 1e-6));
            }
        r.pass = worst <= 1e-5;
        std::ostringstream os;
        os << "max rel |lhs-rhs|=" << worst
           << " (bound 1e-5) over 4 integrands x k in {1,2,3}";
        r.detail = os.str();
    });
}

// 8. Iterated-system orthogonality and norm transport, both bases.
inline CriterionResult run_ortho(Context& ctx) {
    return detail_v::timed("ortho", [&ctx](CriterionResult& r) {
        auto& L = ctx.ladder_();
        const double T = 1e4;
        double worst_off = 0.0, worst_norm = 0.0;
        for (const auto& base : {orthosys::BaseSystem::legendre(),
                                 orthosys::BaseSystem::trigonometric(-1.0, 1.0)}) {
            for (int p : {1, 2, 3}) {
                const auto spec = orthosys::make_iterated_spec(base, p, T, L);
                const auto rep = orthosys::gram_of_iterated(spec, 6, L);
                worst_off = std::max(worst_off, rep.max_offdiag_ratio);
                for (int n = 0; n < 6; ++n)
                    worst_norm = std::max(
                        worst_norm,
                        std::fabs(rep.at(n, n) /
                                      (rep.diag_scale * base.norm_sq(n)) -
                                  1.0));
            }
        }
        r.pass = worst_off <= 1e-4 && worst_norm <= 1e-3;
        std::ostringstream os;
        os << "max offdiag ratio=" << worst_off
           << " (bound 1e-4); max norm-transport dev=" << worst_norm
           << " (bound 1e-3); N=6, p in {1,2,3}, two bases";
        r.detail = os.str();
    });
}

// 9. Depth-2 composition stays orthogonal.
inline CriterionResult run_composed(Context& ctx) {
    return detail_v::timed("composed", [&ctx](CriterionResult& r) {
        auto& L = ctx.ladder_();
        const auto s1 = orthosys::make_iterated_spec(
            orthosys::BaseSystem::legendre(), 1, 1e4, L);
        const auto rep = orthosys::gram_of_composed({s1, s1}, 4, L);
        r.pass = rep.max_offdiag_ratio <= 1e-3;
        std::ostringstream os;
        os << "max offdiag ratio=" << rep.max_offdiag_ratio
           << " (bound 1e-3); p1=p2=1, N=4";
        r.detail = os.str();
    });
}

// 10. Automorphism endpoint fixing and monotonicity, p <= 3.
inline CriterionResult run_automorphism(Context& ctx) {
    return detail_v::timed("automorphism", [&ctx](CriterionResult& r) {
        auto& L = ctx.ladder_();
        double worst_end = 0.0;
        bool monotone = true;
        for (int p : {1, 2, 3}) {
            const auto spec = orthosys::make_iterated_spec(
                orthosys::BaseSystem::legendre(), p, 1e4, L);
            worst_end = std::max(
                worst_end,
                std::fabs(orthosys::automorphism_w(-1.0, spec, L) + 1.0));
            worst_end = std::max(
                worst_end,
                std::fabs(orthosys::automorphism_w(1.0, spec, L) - 1.0));
            double prev = orthosys::automorphism_w(-1.0, spec, L);
            for (int i = 1; i <= 100; ++i) {
                const double w = orthosys::automorphism_w(
                    -1.0 + 2.0 * i / 100.0, spec, L);
                monotone = monotone && w > prev;
                prev = w;
            }
        }
        r.pass = worst_end <= 1e-6 && monotone;
        std::ostringstream os;
        os << "max endpoint err=" << worst_end << " (bound 1e-6 l); "
           << "monotone on 100-pt sample: " << (monotone ? "yes" : "NO");
        r.detail = os.str();
    });
}

// 11. Determinism: identical bytes across runs and thread counts.
inline CriterionResult run_determinism(Context& ctx) {
    return detail_v::timed("determinism", [&ctx](CriterionResult& r) {
        hlgrid::GridConfig cfg;
        cfg.t_max = 500.0;
        cfg.solve_t_max = 250.0;
        auto bytes_of = [&cfg, &ctx](int threads) {
            hlgrid::GridConfig c = cfg;
            c.threads = threads;
            const auto g = hlgrid::CumulativeZGrid::build(c);
            const std::string p =
                ctx.cache_dir + "/det_probe_" + std::to_string(threads) + ".bin";
            g.save(p);
            std::ifstream f(p, std::ios::binary);
            std::string bytes((std::istreambuf_iterator<char>(f)), {});
            std::remove(p.c_str());
            return bytes;
        };
        const std::string b1 = bytes_of(1);
        const std::string b2 = bytes_of(2);
        const std::string b1b = bytes_of(1);
        // byte-compare a formatted ladder row across two fresh ladders
        auto row = [&ctx]() {
            auto& L = ctx.ladder_();
            char buf[128];
            std::snprintf(buf, sizeof buf, "%.17g", L.phi_fast(5500.0));
            return std::string(buf);
        };
        const std::string r1 = row(), r2 = row();
        r.pass = b1 == b2 && b1 == b1b && r1 == r2 && !b1.empty();
        std::ostringstream os;
        os << "grid bytes threads{1,2,1}: " << (b1 == b2 && b1 == b1b ? "identical" : "DIFFER")
           << "; repeated ladder row: " << (r1 == r2 ? "identical" : "DIFFER");
        r.detail = os.str();
    });
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "specfun", "hl",       "equation", "derivative",   "complement",
        "chain",   "lemma7",   "ortho",    "composed",     "automorphism",
        "determinism"};
    return names;
}

inline CriterionResult run_one(const std::string& name, Context& ctx) {
    CriterionResult r;
    if (name == "specfun") r = run_specfun(ctx);
    else if (name == "hl") r = run_hl(ctx);
    else if (name == "equation") r = run_equation(ctx);
    else if (name == "derivative") r = run_derivative(ctx);
    else if (name == "complement") r = run_complement(ctx);
    else if (name == "chain") r = run_chain(ctx);
    else if (name == "lemma7") r = run_lemma7(ctx);
    else if (name == "ortho") r = run_ortho(ctx);
    else if (name == "composed") r = run_composed(ctx);
    else if (name == "automorphism") r = run_automorphism(ctx);
    else if (name == "determinism") r = run_determinism(ctx);
    else throw std::invalid_argument("unknown verify suite: " + name);
    // stated runtime budgets
    double budget = 0.0;
    if (name == "specfun") budget = 10.0;
    if (name == "hl") budget = 120.0;
    if (name == "lemma7") budget = 300.0;
    if (budget > 0.0 && r.seconds > budget) {
        r.pass = false;
        r.detail += " [runtime budget " + std::to_string(budget) + "s exceeded]";
    }
    return r;
}

inline std::vector<CriterionResult> run_suites(const std::string& which,
                                               Context& ctx) {
    std::vector<CriterionResult> out;
    if (which == "all") {
        for (const auto& n : suite_names()) out.push_back(run_one(n, ctx));
    } else {
        out.push_back(run_one(which, ctx));
    }
    return out;
}

}  // namespace zladder::verify
