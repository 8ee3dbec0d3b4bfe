#pragma once

// The ladder function phi(T): unique solution of
//     int_0^{mu_a[x]} Z^2(t) e^{-2t/x} dt  =  int_0^T Z^2(t) dt  =: F(T)
// with mu_a[x] = a x ln x, a in [7,8], plus everything derived from it:
// phi1 = phi/2, its inverse, the potential Phi', omega, the weight
// ztilde^2 = Z^2/omega = d phi1/dt, and the almost-exact Hardy-Littlewood
// representation residual.
//
// Solving strategy.  G(x) := damped integral is smooth and strictly
// increasing in x (all T-oscillation lives in F), so the certified path is
// safeguarded Newton on G(x) - F(T) with the analytic derivative
// G'(x) = (2/x^2) int t e^{-2t/x} Z^2 dt, which the grid scan returns for
// free.  A one-time Hermite spline of ln G over ln x (plus a cubic spline of
// G') gives starting guesses and the fast evaluation path used inside
// quadrature loops; certified solves then polish to the residual contract.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "zladder/constants.hpp"
#include "zladder/errors.hpp"
#include "zladder/grid.hpp"
#include "zladder/parallel.hpp"
#include "zladder/spline.hpp"

namespace zladder::ladder {

struct LadderConfig {
    double a = 7.0;             // mu-family parameter
    double T0 = 100.0;          // minimum admissible T
    double root_rel_tol = 1e-10;
    double bracket_factor = 4.0;
    double bracket_cap = 1024.0;  // hard cap: bracket never exceeds cap * T
    double c0 = kConst.c0_estimate;

    void validate() const {
        if (!(a >= 7.0 && a <= 8.0))
            throw std::domain_error("LadderConfig: a must lie in [7,8]");
        if (!(T0 > 0.0) || !(root_rel_tol > 0.0) || !(bracket_factor > 1.0))
            throw std::domain_error("LadderConfig: bad tolerances");
    }
};

class Ladder {
  public:
    Ladder(const hlgrid::CumulativeZGrid& grid, LadderConfig cfg = {})
        : grid_(&grid), cfg_(cfg) {
        cfg_.validate();
    }
    Ladder(const Ladder&) = delete;
    Ladder& operator=(const Ladder&) = delete;

    const LadderConfig& config() const { return cfg_; }
    const hlgrid::CumulativeZGrid& grid() const { return *grid_; }

    // ------------------------------------------------------------------
    // certified operations
    // ------------------------------------------------------------------

    double solve_phi(double T) const {
        require_admissible(T);
        {
            std::lock_guard lock(mu_);
            if (const auto it = memo_.find(T); it != memo_.end())
                return it->second;
        }
        const double F = grid_->hl_integral(T);
        const double tol = cfg_.root_rel_tol * F;
        ensure_fast();

        double lo = T, hi = cfg_.bracket_cap * T;
        double x = initial_guess(F, T);
        double fval = 0.0, deriv = 0.0;
        bool done = false;
        for (int it = 0; it < 80 && !done; ++it) {
            const auto scan = grid_->damped_scan(x, cfg_.a);
            fval = scan.plain - F;
            deriv = 2.0 / (x * x) * scan.weighted;
            if (deriv <= 0.0)
                throw bracket_error(
                    "solve_phi: damped integral not increasing at x = " +
                    std::to_string(x));
            if (std::fabs(fval) <= tol) {
                done = true;
                break;
            }
            if (fval > 0.0) hi = x; else lo = x;
            double next = x - fval / deriv;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            x = next;
        }
        if (!done)
            throw convergence_error("solve_phi: residual tolerance not reached");

        std::lock_guard lock(mu_);
        const auto [it, inserted] = memo_.emplace(T, x);
        if (inserted) {
            // Monotone up to solver resolution: the residual tolerance maps
            // to ~root_rel_tol * x of abscissa slack where phi' is tiny
            // (near zeta zeros), so strictness only holds beyond that.
            const double slack = 8.0 * cfg_.root_rel_tol * x;
            if (it != memo_.begin() && std::prev(it)->second >= x + slack)
                throw invariant_error("solve_phi: memo lost monotonicity");
            if (std::next(it) != memo_.end() &&
                std::next(it)->second + slack <= x)
                throw invariant_error("solve_phi: memo lost monotonicity");
        }
        return it->second;
    }

    double phi1(double T) const { return 0.5 * solve_phi(T); }

    // T-hat with |phi1(T-hat) - y| <= root_rel_tol * y.  Value-targeted:
    // phi1 has flat spots (its derivative vanishes at zeta zeros), so the
    // contract is on the image, not the abscissa.
    double phi1_inverse(double y) const {
        require_admissible(y);
        ensure_fast();
        const double tol = cfg_.root_rel_tol * y;
        double lo = y, hi = cfg_.bracket_cap * y;  // phi1(y) < y by (their) nature
        double t = invert_fast(y);
        for (int it = 0; it < 80; ++it) {
            const double e = phi1(t) - y;
            if (std::fabs(e) <= tol) return t;
            if (e > 0.0) hi = t; else lo = t;
            const double slope =
                std::max(z_tilde_sq_fast(t), 1e-6 * y / std::max(t, 1.0));
            double next = t - e / slope;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            t = next;
        }
        throw convergence_error("phi1_inverse: tolerance not reached");
    }

    // Phi'_phi[x]: weighted first moment plus the mu_a boundary term
    // Z^2(mu_a) e^{-2 mu_a / x} a (ln x + 1), which is of order x^{-2a}.
    double phi_prime_potential(double x) const {
        if (!(x > std::exp(1.0)))
            throw std::domain_error("phi_prime_potential: x must exceed e");
        const double first = grid_->weighted_first_moment(x, cfg_.a);
        return first + boundary_term(x);
    }

    double omega(double t) const {
        require_admissible(t);
        return 2.0 * phi_prime_potential(solve_phi(t));
    }

    double z_tilde_sq(double t) const {
        require_admissible(t);
        const double z = specfun::detail::z_unchecked(t, grid_->config.fn);
        return z * z / omega(t);
    }

    // F(T) - [phi1 ln phi1 + (c - ln 2pi) phi1 + c0]
    double hl_representation_residual(double T) const {
        require_admissible(T);
        const double p1 = phi1(T);
        return grid_->hl_integral(T) - p1 * std::log(p1) -
               (kConst.euler_c - kConst.ln_2pi) * p1 - cfg_.c0;
    }

    // Weighted least-squares constant over the sample; weights (T/ln T)^2
    // since the representation error decays like ln T / T.  Updates the c0
    // used by hl_representation_residual and returns it.
    double fit_c0(const std::vector<double>& sample) {
        double sw = 0.0, swr = 0.0;
        for (const double T : sample) {
            const double p1 = phi1(T);
            const double r = grid_->hl_integral(T) - p1 * std::log(p1) -
                             (kConst.euler_c - kConst.ln_2pi) * p1;
            const double w = (T / std::log(T)) * (T / std::log(T));
            sw += w;
            swr += w * r;
        }
        cfg_.c0 = swr / sw;
        return cfg_.c0;
    }

    // ------------------------------------------------------------------
    // fast paths (spline-backed; agree with certified to ~1e-10 relative,
    // asserted in tests).  Used inside quadrature loops.
    // ------------------------------------------------------------------

    double phi_fast(double T) const {
        require_admissible(T);
        ensure_fast();
        return invert_g(std::log(grid_->hl_integral(T)));
    }

    double phi1_fast(double T) const { return 0.5 * phi_fast(T); }

    double omega_fast(double t) const {
        require_admissible(t);
        ensure_fast();
        const double x = invert_g(std::log(grid_->hl_integral(t)));
        return 2.0 * fast_->wspline(std::log(x));
    }

    double z_tilde_sq_fast(double t) const {
        const double z = specfun::detail::z_unchecked(t, grid_->config.fn);
        return z * z / omega_fast(t);
    }

    std::size_t memo_size() const {
        std::lock_guard lock(mu_);
        return memo_.size();
    }

  private:
    struct FastPath {
        std::vector<double> s;    // ln x, uniform
        std::vector<double> lng;  // ln G
        std::vector<double> dl;   // d lnG / d s = x G' / G
        CubicSpline wspline;      // weighted_first_moment over s
        double ds = 0.0;
    };

    void require_admissible(double T) const {
        if (!(T >= cfg_.T0))
            throw std::domain_error("ladder: T below T0 = " +
                                    std::to_string(cfg_.T0));
    }

    double boundary_term(double x) const {
        const double mu = hlgrid::mu_a(cfg_.a, x);
        const double damp = std::exp(-2.0 * mu / x);  // = x^{-2a}
        if (damp == 0.0) return 0.0;
        const double z = specfun::detail::z_unchecked(mu, grid_->config.fn);
        return z * z * damp * cfg_.a * (std::log(x) + 1.0);
    }

    void ensure_fast() const {
        std::call_once(fast_once_, [this] {
            auto fp = std::make_unique<FastPath>();
            const double x_lo = 0.9 * cfg_.T0;
            const double x_hi =
                std::max(2.0 * grid_->config.solve_t_max, 4.0 * cfg_.T0);
            const std::size_t n = 512;
            fp->s.resize(n);
            fp->lng.resize(n);
            fp->dl.resize(n);
            std::vector<double> w(n);
            const double s0 = std::log(x_lo), s1 = std::log(x_hi);
            fp->ds = (s1 - s0) / (n - 1);
            parallel_for(n, [&](std::size_t i) {
                const double s = s0 + fp->ds * static_cast<double>(i);
                const double x = std::exp(s);
                const auto scan = grid_->damped_scan(x, cfg_.a);
                const double gp = 2.0 / (x * x) * scan.weighted;
                fp->s[i] = s;
                fp->lng[i] = std::log(scan.plain);
                fp->dl[i] = x * gp / scan.plain;
                w[i] = gp;
            });
            fp->wspline = CubicSpline(fp->s, w);
            fast_ = std::move(fp);
        });
    }

    // Hermite cubic of lnG on the uniform s-mesh, inverted by Newton.
    double invert_g(double target_lng) const {
        const FastPath& f = *fast_;
        const auto it = std::lower_bound(f.lng.begin(), f.lng.end(), target_lng);
        std::size_t j = it == f.lng.begin() ? 0 : (it - f.lng.begin()) - 1;
        j = std::min(j, f.lng.size() - 2);
        const double h = f.ds;
        const double y0 = f.lng[j], y1 = f.lng[j + 1];
        const double d0 = f.dl[j] * h, d1 = f.dl[j + 1] * h;
        double u = 0.5;
        for (int k = 0; k < 8; ++k) {
            const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
            const double h10 = u * (1.0 - u) * (1.0 - u);
            const double h01 = u * u * (3.0 - 2.0 * u);
            const double h11 = u * u * (u - 1.0);
            const double val = h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1;
            const double dh00 = 6.0 * u * (u - 1.0);
            const double dh10 = (1.0 - u) * (1.0 - 3.0 * u);
            const double dh01 = -dh00;
            const double dh11 = u * (3.0 * u - 2.0);
            const double der = dh00 * y0 + dh10 * d0 + dh01 * y1 + dh11 * d1;
            const double step = (val - target_lng) / der;
            u -= step;
            u = std::clamp(u, 0.0, 1.0);
            if (std::fabs(step) < 1e-14) break;
        }
        return std::exp(f.s[j] + u * h);
    }

    double initial_guess(double F, double T) const {
        const double g = invert_g(std::log(F));
        if (g > T && g < cfg_.bracket_cap * T) return g;
        return std::min(cfg_.bracket_factor * T, 2.0 * T);
    }

    double invert_fast(double y) const {
        // abscissa with phi1_fast ~ y: F(t) = G(2y) and F is cheap, monotone
        const double target = grid_->damped_scan(2.0 * y, cfg_.a).plain;
        double lo = y, hi = std::min(4.0 * y, grid_->hl_t_max());
        for (int k = 0; k < 60; ++k) {
            const double mid = 0.5 * (lo + hi);
            (grid_->hl_integral(mid) < target ? lo : hi) = mid;
            if (hi - lo < 1e-9 * y) break;
        }
        return 0.5 * (lo + hi);
    }

    const hlgrid::CumulativeZGrid* grid_;
    LadderConfig cfg_;
    mutable std::map<double, double> memo_;
    mutable std::mutex mu_;
    mutable std::once_flag fast_once_;
    mutable std::unique_ptr<FastPath> fast_;
};

}  // namespace zladder::ladder
