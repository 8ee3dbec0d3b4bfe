#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>

#include "zladder/errors.hpp"

namespace zladder::roots {

struct BrentOptions {
    double x_tol = 0.0;      // absolute tolerance on the root
    double f_tol = 0.0;      // stop when |f| <= f_tol (0: machine-limited)
    int max_iter = 200;
};

// Classic Brent-Dekker on a sign-changing bracket [a, b].
template <class F>
double brent(F&& f, double a, double b, double fa, double fb,
             const BrentOptions& opt = {}) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw bracket_error("brent: no sign change on [" + std::to_string(a) +
                            ", " + std::to_string(b) + "]");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < opt.max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = e = b - a; }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() *
                               std::fabs(b) + 0.5 * opt.x_tol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0 || std::fabs(fb) <= opt.f_tol)
            return b;
        if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
            d = e = m;  // bisection
        } else {
            double p, q, r, s = fb / fa;
            if (a == c) {            // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {                 // inverse quadratic
                q = fa / fc; r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::fmin(3.0 * m * q - std::fabs(tol * q),
                                    std::fabs(e * q))) {
                e = d; d = p / q;
            } else {
                d = e = m;
            }
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    throw convergence_error("brent: iteration cap reached");
}

template <class F>
double brent(F&& f, double a, double b, const BrentOptions& opt = {}) {
    return brent(f, a, b, f(a), f(b), opt);
}

// Expand [lo, hi] geometrically (factor 2) until f changes sign; hi capped at
// cap.  f must be increasing for the failure diagnostics to make sense.
template <class F>
std::pair<double, double> expand_bracket(F&& f, double lo, double hi,
                                         double cap, double flo, double fhi) {
    while ((flo > 0.0) == (fhi > 0.0)) {
        if (hi >= cap)
            throw bracket_error("expand_bracket: no sign change up to cap " +
                                std::to_string(cap));
        lo = hi; flo = fhi;
        hi = std::fmin(2.0 * hi, cap);
        fhi = f(hi);
    }
    return {lo, hi};
}

}  // namespace zladder::roots
