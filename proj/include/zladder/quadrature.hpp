#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "zladder/constants.hpp"
#include "zladder/errors.hpp"

namespace zladder::quad {

// Gauss-Legendre nodes/weights on [-1,1], computed once per order by Newton
// iteration on P_n (no tabulated constants to transcribe).
struct GaussRule {
    std::vector<double> x, w;
};

inline GaussRule make_gauss_legendre(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 60; ++it) {
            double p0 = 1.0, p1 = xi;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0) * xi * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / dp;
            xi -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        // i runs from the node nearest +1 downward; store ascending
        r.x[n - 1 - i] = xi;
        r.w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
    return r;
}

template <int N>
inline const GaussRule& gauss_legendre() {
    static const GaussRule r = make_gauss_legendre(N);
    return r;
}

template <class F>
double panel(F&& f, double a, double b, const GaussRule& r) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
    return s * h;
}

// Adaptive bisection with a GL-16 panel rule; accepts a panel when the
// halved estimate moves by less than the local tolerance share.  Used as the
// from-scratch oracle integrator in tests and for small smooth integrals.
template <class F>
double adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                double abs_tol = 1e-12, int max_depth = 30) {
    const GaussRule& r = gauss_legendre<16>();
    struct Rec {
        const GaussRule& r;
        double rel, abs;
        int maxd;
        double operator()(F& f, double a, double b, double whole, int d) const {
            const double m = 0.5 * (a + b);
            const double left = panel(f, a, m, r), right = panel(f, m, b, r);
            const double err = std::fabs(left + right - whole);
            if (err < abs + rel * std::fabs(left + right) || d >= maxd) {
                if (d >= maxd && err > 1e3 * (abs + rel * std::fabs(left + right)))
                    throw convergence_error("adaptive quadrature: depth cap");
                return left + right;
            }
            return (*this)(f, a, m, left, d + 1) + (*this)(f, m, b, right, d + 1);
        }
    };
    Rec rec{r, rel_tol, abs_tol, max_depth};
    return rec(f, a, b, panel(f, a, b, r), 0);
}

}  // namespace zladder::quad
