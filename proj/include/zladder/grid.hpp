#pragma once

// Sampled Z^2(t) grid: cumulative Hardy-Littlewood integral F(T) plus the
// exponentially damped integrals the ladder equation needs.
//
// Layout.  Panels carry a 32-point Gauss-Legendre rule; widths track the
// local oscillation length 2 pi / ln(t/2pi) so every Z^2 oscillation is
// resolved by the node-spacing contract (spacing <= osc / panels_per_osc).
// Two sections:
//   head  [0, t_max]        node-level storage (t, Z^2, F) -> F(T) queries
//   tail  (t_max, damp_max] per-panel moment storage only -> damped kernels
// The tail exists because the damped integrals at x ~ 2 T_solve carry mass
// out to t ~ 12 x, far beyond any F(T) query; node-level storage out there
// would cost hundreds of MB while only sum_j (-2/x)^j/j! * M_j per panel is
// ever needed (M_j the centered moments; the Taylor split of the kernel
// converges to ~1e-13 with 8 moments since panel_width / x stays < 0.1).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "zladder/constants.hpp"
#include "zladder/errors.hpp"
#include "zladder/parallel.hpp"
#include "zladder/quadrature.hpp"
#include "zladder/specfun.hpp"

namespace zladder::hlgrid {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    int panels_per_oscillation = 8;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::domain_error("QuadratureSpec: tolerances must be > 0");
        if (panels_per_oscillation < 4)
            throw std::domain_error("QuadratureSpec: panels_per_oscillation >= 4");
    }
    bool operator==(const QuadratureSpec&) const = default;
};

struct GridConfig {
    double t_max = 2e4;        // F(T) coverage
    double solve_t_max = 2e4;  // ladder solves supported for T <= this
    QuadratureSpec spec{};
    specfun::SpecfunConfig fn{};
    std::uint64_t node_cap = 80'000'000;
    int threads = 0;

    bool compatible(const GridConfig& o) const {
        return t_max == o.t_max && solve_t_max == o.solve_t_max &&
               spec == o.spec && fn.t_min == o.fn.t_min &&
               fn.theta_crossover == o.fn.theta_crossover &&
               fn.z_crossover == o.fn.z_crossover;
    }
};

inline double mu_a(double a, double x) { return a * x * std::log(x); }

// Smallest t with e^{-2t/x} (t+2)^2 < abs_tol; the integrand tail beyond it
// is below abs_tol * x/2 in total.
inline double damping_cutoff(double x, double abs_tol) {
    double t = std::max(x, 10.0);
    for (int i = 0; i < 80; ++i) {
        const double next =
            0.5 * x * (std::log(1.0 / abs_tol) + 2.0 * std::log(t + 2.0));
        if (std::fabs(next - t) < 1e-9 * t) return next;
        t = next;
    }
    return t;
}

namespace detail {

inline constexpr int kPanelOrder = 32;
inline constexpr int kMoments = 8;

// Legendre analysis/integration matrices for the panel rule:
//   coef_k  = (2k+1)/2 sum_i w_i P_k(x_i) f_i
//   F(x_i)  = sum_k coef_k Ik[i][k],  Ik = int_{-1}^{x} P_k
struct PanelMatrices {
    std::array<std::array<double, kPanelOrder>, kPanelOrder> analyze{};
    std::array<std::array<double, kPanelOrder>, kPanelOrder> integrate{};
    double max_gap = 0.0;  // widest internode spacing on [-1,1], halves added

    PanelMatrices() {
        const auto& gl = quad::gauss_legendre<kPanelOrder>();
        std::array<std::array<double, kPanelOrder + 2>, kPanelOrder> P{};
        for (int i = 0; i < kPanelOrder; ++i) {
            const double x = gl.x[i];
            P[i][0] = 1.0;
            P[i][1] = x;
            for (int k = 1; k <= kPanelOrder; ++k)
                P[i][k + 1] = ((2.0 * k + 1.0) * x * P[i][k] - k * P[i][k - 1]) /
                              (k + 1.0);
        }
        for (int k = 0; k < kPanelOrder; ++k)
            for (int i = 0; i < kPanelOrder; ++i)
                analyze[k][i] = 0.5 * (2.0 * k + 1.0) * gl.w[i] * P[i][k];
        for (int i = 0; i < kPanelOrder; ++i) {
            integrate[i][0] = gl.x[i] + 1.0;
            for (int k = 1; k < kPanelOrder; ++k)
                integrate[i][k] = (P[i][k + 1] - P[i][k - 1]) / (2.0 * k + 1.0);
        }
        max_gap = gl.x[0] + 1.0;
        for (int i = 0; i + 1 < kPanelOrder; ++i)
            max_gap = std::max(max_gap, gl.x[i + 1] - gl.x[i]);
        max_gap = std::max(max_gap, 1.0 - gl.x[kPanelOrder - 1]);
    }
};

inline const PanelMatrices& panel_matrices() {
    static const PanelMatrices m{};
    return m;
}

}  // namespace detail

class CumulativeZGrid {
  public:
    GridConfig config;
    double damp_t_max = 0.0;       // tail coverage for damped kernels
    std::vector<double> panel_lo;  // n_panels + 1 boundaries, panel_lo[0] = 0
    std::vector<double> panel_cum; // F at boundaries, panel_cum[0] = 0
    struct Moments {
        std::array<double, detail::kMoments> m;
    };
    std::vector<Moments> moments;  // centered: M_j = hh * sum w z2 u^j
    std::size_t head_panels = 0;   // node storage kept for panels [0, head_panels)
    std::vector<double> node_t, node_z2, node_cum;

    static CumulativeZGrid build(const GridConfig& cfg) {
        cfg.spec.validate();
        CumulativeZGrid g;
        g.config = cfg;
        const auto& pm = detail::panel_matrices();
        const auto& gl = quad::gauss_legendre<detail::kPanelOrder>();

        g.damp_t_max = cfg.t_max;
        if (cfg.solve_t_max > 0.0)
            g.damp_t_max = std::max(
                g.damp_t_max,
                damping_cutoff(2.0 * cfg.solve_t_max, cfg.spec.abs_tol));

        // Panel boundaries.  Width chosen so the widest internode gap stays
        // below osc/ppo, evaluated at the panel's far end since osc shrinks
        // across it; ln(t/2pi) clamped at 1 where the oscillation-length
        // formula degenerates (t < 2 pi e).  Near t = 0 the width is capped
        // at max(1, 0.45 t): the zeta pole at s = 1 sits a complex distance
        // 1/2 from the line and a panel spanning it starves the rule.
        {
            const double gap_scale =
                0.95 / (cfg.spec.panels_per_oscillation * 0.5 * pm.max_gap);
            auto osc_width = [&](double t) {
                const double lnu =
                    std::max(1.0, std::log(std::max(t, 1.0) / kTwoPi));
                return gap_scale * kTwoPi / lnu;
            };
            double t = 0.0;
            g.panel_lo.push_back(0.0);
            while (t < g.damp_t_max) {
                const double h = std::min(osc_width(t + osc_width(t)),
                                          std::max(1.0, 0.45 * t));
                t += h;
                g.panel_lo.push_back(t);
                if (g.panel_lo.size() * detail::kPanelOrder > cfg.node_cap)
                    throw resource_error("build_grid: node cap exceeded");
            }
        }
        const std::size_t n = g.panel_lo.size() - 1;
        g.head_panels = n;
        for (std::size_t i = 0; i + 1 <= n; ++i)
            if (g.panel_lo[i] >= cfg.t_max) {
                g.head_panels = i;
                break;
            }

        g.moments.resize(n);
        std::vector<double> pint(n);
        g.node_t.resize(g.head_panels * detail::kPanelOrder);
        g.node_z2.resize(g.head_panels * detail::kPanelOrder);
        g.node_cum.resize(g.head_panels * detail::kPanelOrder);

        parallel_for(
            n,
            [&](std::size_t i) {
                const double lo = g.panel_lo[i], hi = g.panel_lo[i + 1];
                const double tc = 0.5 * (lo + hi), hh = 0.5 * (hi - lo);
                std::array<double, detail::kPanelOrder> z2;
                for (int k = 0; k < detail::kPanelOrder; ++k) {
                    const double t = tc + hh * gl.x[k];
                    const double z = specfun::detail::z_unchecked(t, cfg.fn);
                    z2[k] = z * z;
                }
                auto& M = g.moments[i].m;
                for (int j = 0; j < detail::kMoments; ++j) {
                    long double acc = 0.0L;
                    for (int k = 0; k < detail::kPanelOrder; ++k) {
                        double uj = 1.0;
                        for (int r = 0; r < j; ++r) uj *= gl.x[k];
                        acc += static_cast<long double>(gl.w[k]) * z2[k] * uj;
                    }
                    M[j] = static_cast<double>(acc) * hh;
                }
                pint[i] = M[0];
                if (i < g.head_panels) {
                    std::array<double, detail::kPanelOrder> coef;
                    for (int k = 0; k < detail::kPanelOrder; ++k) {
                        double acc = 0.0;
                        for (int r = 0; r < detail::kPanelOrder; ++r)
                            acc += pm.analyze[k][r] * z2[r];
                        coef[k] = acc;
                    }
                    const std::size_t base = i * detail::kPanelOrder;
                    for (int k = 0; k < detail::kPanelOrder; ++k) {
                        g.node_t[base + k] = tc + hh * gl.x[k];
                        g.node_z2[base + k] = z2[k];
                        double acc = 0.0;
                        for (int r = 0; r < detail::kPanelOrder; ++r)
                            acc += coef[r] * pm.integrate[k][r];
                        g.node_cum[base + k] = hh * acc;  // local part for now
                    }
                }
            },
            cfg.threads);

        g.panel_cum.resize(n + 1);
        g.panel_cum[0] = 0.0;
        long double acc = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            acc += pint[i];
            g.panel_cum[i + 1] = static_cast<double>(acc);
        }
        for (std::size_t i = 0; i < g.head_panels; ++i)
            for (int k = 0; k < detail::kPanelOrder; ++k)
                g.node_cum[i * detail::kPanelOrder + k] += g.panel_cum[i];
        return g;
    }

    double hl_t_max() const {
        return head_panels < panel_lo.size() - 1 ? panel_lo[head_panels]
                                                 : panel_lo.back();
    }

    // F(T) = int_0^T Z^2: panel prefix plus the Legendre antiderivative of the
    // stored node values over the partial panel.
    double hl_integral(double T) const {
        if (!(T >= 0.0) || T > hl_t_max())
            throw range_error_("hl_integral: T outside grid head [0, " +
                               std::to_string(hl_t_max()) + "]");
        const auto it = std::upper_bound(panel_lo.begin(), panel_lo.end(), T);
        std::size_t i = static_cast<std::size_t>(it - panel_lo.begin());
        if (i == 0) return 0.0;
        --i;
        if (i >= head_panels) return panel_cum[head_panels];  // T == boundary
        const double lo = panel_lo[i], hi = panel_lo[i + 1];
        if (T == lo) return panel_cum[i];
        const double tc = 0.5 * (lo + hi), hh = 0.5 * (hi - lo);
        const double u = (T - tc) / hh;
        const auto& pm = detail::panel_matrices();
        const std::size_t base = i * detail::kPanelOrder;
        std::array<double, detail::kPanelOrder> coef;
        for (int k = 0; k < detail::kPanelOrder; ++k) {
            double acc = 0.0;
            for (int r = 0; r < detail::kPanelOrder; ++r)
                acc += pm.analyze[k][r] * node_z2[base + r];
            coef[k] = acc;
        }
        // antiderivative of P_k at u
        std::array<double, detail::kPanelOrder + 2> P;
        P[0] = 1.0;
        P[1] = u;
        for (int k = 1; k <= detail::kPanelOrder; ++k)
            P[k + 1] = ((2.0 * k + 1.0) * u * P[k] - k * P[k - 1]) / (k + 1.0);
        double acc = coef[0] * (u + 1.0);
        for (int k = 1; k < detail::kPanelOrder; ++k)
            acc += coef[k] * (P[k + 1] - P[k - 1]) / (2.0 * k + 1.0);
        return panel_cum[i] + hh * acc;
    }

    struct DampedPair {
        double plain;     // int_0^{u*} Z^2 e^{-2t/x} dt
        double weighted;  // int_0^{u*} t Z^2 e^{-2t/x} dt
    };

    // Shared scan for both exponential kernels.  u* = min(mu_a(x), t_trunc);
    // whole panels with lo <= u* are taken when the damping cutoff governs
    // (the overshoot is below the abs_tol tail bound); an explicit partial
    // panel is integrated live in the rare mu_a-limited case (x < ~10).
    // cutoff_override (> 0) replaces the damping cutoff; used by the
    // truncation-invariance checks.
    DampedPair damped_scan(double x, double a,
                           double cutoff_override = -1.0) const {
        if (!(x > std::exp(1.0)))
            throw std::domain_error("damped integral: x must exceed e");
        const double cut = cutoff_override > 0.0
                               ? cutoff_override
                               : damping_cutoff(x, config.spec.abs_tol);
        const double mu = mu_a(a, x);
        const double u_star = std::min(mu, cut);
        if (u_star > panel_lo.back())
            throw range_error_(
                "damped integral: u* = " + std::to_string(u_star) +
                " exceeds grid coverage " + std::to_string(panel_lo.back()) +
                " (rebuild with larger solve_t_max)");
        const auto it =
            std::upper_bound(panel_lo.begin(), panel_lo.end(), u_star);
        const std::size_t end =
            std::min<std::size_t>(static_cast<std::size_t>(it - panel_lo.begin()),
                                  moments.size());
        const double inv_x = 1.0 / x;
        long double plain = 0.0L, tmom = 0.0L;
        const bool mu_limited = mu < cut;
        const std::size_t whole =
            mu_limited && end > 0 ? end - 1 : end;  // last panel partial if mu-limited
        for (std::size_t i = 0; i < whole; ++i) {
            const double lo = panel_lo[i], hi = panel_lo[i + 1];
            const double tc = 0.5 * (lo + hi), hh = 0.5 * (hi - lo);
            const double beta = 2.0 * hh * inv_x;
            const auto& M = moments[i].m;
            double term = 1.0, sp = M[0], st = tc * M[0] + hh * M[1];
            for (int j = 1; j + 1 < detail::kMoments; ++j) {
                term *= -beta / j;
                sp += term * M[j];
                st += term * (tc * M[j] + hh * M[j + 1]);
            }
            const double e = std::exp(-2.0 * tc * inv_x);
            plain += static_cast<long double>(e) * sp;
            tmom += static_cast<long double>(e) * st;
        }
        if (mu_limited && whole < end) {
            const double lo = panel_lo[whole];
            const auto& gl = quad::gauss_legendre<16>();
            const double c = 0.5 * (lo + u_star), hh = 0.5 * (u_star - lo);
            for (std::size_t k = 0; k < gl.x.size(); ++k) {
                const double t = c + hh * gl.x[k];
                const double z = specfun::detail::z_unchecked(t, config.fn);
                const double v = z * z * std::exp(-2.0 * t * inv_x) * gl.w[k] * hh;
                plain += v;
                tmom += static_cast<long double>(v) * t;
            }
        }
        return {static_cast<double>(plain), static_cast<double>(tmom)};
    }

    double damped_integral(double x, double a) const {
        return damped_scan(x, a).plain;
    }

    double weighted_first_moment(double x, double a) const {
        const auto p = damped_scan(x, a);
        return 2.0 / (x * x) * p.weighted;
    }

    // ------------------------------------------------------------------
    // cache file (versioned binary, byte-exact round trip)
    // ------------------------------------------------------------------
    static constexpr char kMagic[8] = {'Z', 'L', 'G', 'R', 'I', 'D', '0', '1'};

    void save(const std::string& path) const {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("grid save: cannot open " + path);
        auto put = [&f](const void* p, std::size_t n) {
            f.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
        };
        put(kMagic, 8);
        const std::uint64_t counts[3] = {panel_lo.size(), head_panels,
                                         node_t.size()};
        put(counts, sizeof counts);
        const double header[10] = {config.t_max,
                                   config.solve_t_max,
                                   damp_t_max,
                                   config.spec.rel_tol,
                                   config.spec.abs_tol,
                                   static_cast<double>(config.spec.panels_per_oscillation),
                                   config.fn.t_min,
                                   config.fn.theta_crossover,
                                   config.fn.z_crossover,
                                   0.0};
        put(header, sizeof header);
        put(panel_lo.data(), panel_lo.size() * 8);
        put(panel_cum.data(), panel_cum.size() * 8);
        put(moments.data(), moments.size() * sizeof(Moments));
        put(node_t.data(), node_t.size() * 8);
        put(node_z2.data(), node_z2.size() * 8);
        put(node_cum.data(), node_cum.size() * 8);
        if (!f) throw std::runtime_error("grid save: write failed: " + path);
    }

    static CumulativeZGrid load(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("grid load: cannot open " + path);
        auto get = [&f, &path](void* p, std::size_t n) {
            f.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
            if (!f) throw std::runtime_error("grid load: truncated file " + path);
        };
        char magic[8];
        get(magic, 8);
        if (std::memcmp(magic, kMagic, 8) != 0)
            throw std::runtime_error("grid load: bad magic/version in " + path);
        std::uint64_t counts[3];
        get(counts, sizeof counts);
        double header[10];
        get(header, sizeof header);
        CumulativeZGrid g;
        g.config.t_max = header[0];
        g.config.solve_t_max = header[1];
        g.damp_t_max = header[2];
        g.config.spec.rel_tol = header[3];
        g.config.spec.abs_tol = header[4];
        g.config.spec.panels_per_oscillation = static_cast<int>(header[5]);
        g.config.fn.t_min = header[6];
        g.config.fn.theta_crossover = header[7];
        g.config.fn.z_crossover = header[8];
        g.panel_lo.resize(counts[0]);
        g.panel_cum.resize(counts[0]);
        g.head_panels = counts[1];
        g.moments.resize(counts[0] - 1);
        g.node_t.resize(counts[2]);
        g.node_z2.resize(counts[2]);
        g.node_cum.resize(counts[2]);
        get(g.panel_lo.data(), g.panel_lo.size() * 8);
        get(g.panel_cum.data(), g.panel_cum.size() * 8);
        get(g.moments.data(), g.moments.size() * sizeof(Moments));
        get(g.node_t.data(), g.node_t.size() * 8);
        get(g.node_z2.data(), g.node_z2.size() * 8);
        get(g.node_cum.data(), g.node_cum.size() * 8);
        return g;
    }
};

inline CumulativeZGrid build_grid(double t_max, const QuadratureSpec& spec,
                                  double solve_t_max = -1.0) {
    GridConfig cfg;
    cfg.t_max = t_max;
    cfg.solve_t_max = solve_t_max < 0.0 ? t_max : solve_t_max;
    cfg.spec = spec;
    return CumulativeZGrid::build(cfg);
}

inline double hl_asymptotic(double T) {
    if (!(T > std::exp(1.0)))
        throw std::domain_error("hl_asymptotic: T must exceed e");
    return T * std::log(T) + (2.0 * kConst.euler_c - 1.0 - kConst.ln_2pi) * T;
}

}  // namespace zladder::hlgrid
