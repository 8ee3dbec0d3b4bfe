#pragma once

// Iterated L2-orthogonal systems.  A base system {f_n} on [a, a+2l] is pushed
// through the depth-p ladder pullback
//   f_n^p(t) = f_n(phi1^p(rho(t)) - T + a) * prod_{r<p} |ztilde(phi1^r(rho(t)))|
// with rho the affine map of [a, a+2l] onto the reverse segment
// [T^p, (T+2l)^p]; orthogonality transports because the squared weight in
// f_m^p f_n^p is exactly the Jacobian of phi1^p.  Gram matrices over shared
// quadrature nodes verify it numerically.

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "zladder/constants.hpp"
#include "zladder/errors.hpp"
#include "zladder/iterations.hpp"
#include "zladder/ladder.hpp"
#include "zladder/quadrature.hpp"

namespace zladder::orthosys {

// P_n by the three-term recurrence.
inline double legendre_eval(int n, double t) {
    if (n < 0) throw std::domain_error("legendre_eval: n >= 0");
    if (n == 0) return 1.0;
    double p0 = 1.0, p1 = t;
    for (int m = 1; m < n; ++m) {
        const double p2 = ((2.0 * m + 1.0) * t * p1 - m * p0) / (m + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

struct BaseSystem {
    enum class Kind { Legendre, Trigonometric, External };
    Kind kind = Kind::Legendre;
    double a = -1.0;
    double l = 1.0;
    std::function<double(int, double)> external;

    static BaseSystem legendre() { return {}; }

    // {1, cos(pi m (t-a)/l), sin(pi m (t-a)/l)} indexed 0; 1,2; 3,4; ...
    static BaseSystem trigonometric(double a, double l) {
        BaseSystem b;
        b.kind = Kind::Trigonometric;
        b.a = a;
        b.l = l;
        return b;
    }

    static BaseSystem make_external(std::function<double(int, double)> f,
                                    double a, double l) {
        BaseSystem b;
        b.kind = Kind::External;
        b.a = a;
        b.l = l;
        b.external = std::move(f);
        return b;
    }

    double eval(int n, double t) const {
        switch (kind) {
            case Kind::Legendre:
                return legendre_eval(n, t);
            case Kind::Trigonometric: {
                if (n == 0) return 1.0;
                const int m = (n + 1) / 2;
                const double arg = kPi * m * (t - a) / l;
                return (n % 2 == 1) ? std::cos(arg) : std::sin(arg);
            }
            case Kind::External:
                return external(n, t);
        }
        return 0.0;
    }

    // known L2 norms, used by the norm-transport checks
    double norm_sq(int n) const {
        switch (kind) {
            case Kind::Legendre:
                return 2.0 / (2.0 * n + 1.0);
            case Kind::Trigonometric:
                return n == 0 ? 2.0 * l : l;
            case Kind::External:
                return std::nan("");
        }
        return std::nan("");
    }
};

struct GramReport {
    int size = 0;
    std::vector<double> entries;  // row-major size x size
    double max_offdiag_ratio = 0.0;
    double diag_scale = 1.0;  // predicted G_nn/base-norm factor

    double at(int m, int n) const {
        return entries[static_cast<std::size_t>(m) * size + n];
    }
};

// Shared-node Gram computation; the evaluator fills all N values per node.
// Panel layout is driven by arc equidistribution: the span_probe reports the
// largest image advance of the evaluator's ladder orbit across a candidate
// panel, and panels are bisected until that advance resolves the local
// oscillation length.  A uniform width would miss the heavy-tailed local
// frequency of the weight products ((phi1^r)' spikes where ztilde^2 runs
// several times its mean).
struct GramOptions {
    double osc_scale_t = 0.0;  // 0: plain interval (base systems)
    double arc_fraction = 0.25;
    int max_refine_depth = 16;
    std::function<double(double, double)> span_probe;
};

inline GramReport gram_matrix(
    const std::function<void(double, std::vector<double>&)>& eval_all, int N,
    double a, double l, const GramOptions& opt = {}) {
    if (N < 2) throw std::domain_error("gram_matrix: N >= 2");
    const double len = 2.0 * l;
    std::vector<double> bounds{a};
    const double osc =
        opt.osc_scale_t > 0.0
            ? kTwoPi / std::max(1.0, std::log(opt.osc_scale_t / kTwoPi))
            : len;
    const std::function<void(double, double, int)> subdivide =
        [&](double ta, double tb, int depth) {
            const bool resolved =
                !opt.span_probe ||
                opt.span_probe(ta, tb) <= opt.arc_fraction * osc;
            if ((resolved && tb - ta <= len / 8.0) ||
                depth >= opt.max_refine_depth) {
                bounds.push_back(tb);
                return;
            }
            const double mid = 0.5 * (ta + tb);
            subdivide(ta, mid, depth + 1);
            subdivide(mid, tb, depth + 1);
        };
    subdivide(a, a + len, 0);
    const auto& gl = quad::gauss_legendre<16>();
    GramReport rep;
    rep.size = N;
    std::vector<long double> acc(static_cast<std::size_t>(N) * N, 0.0L);
    std::vector<double> f(static_cast<std::size_t>(N));
    for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
        const double c = 0.5 * (bounds[p] + bounds[p + 1]);
        const double hh = 0.5 * (bounds[p + 1] - bounds[p]);
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const double t = c + hh * gl.x[i];
            eval_all(t, f);
            const double w = gl.w[i] * hh;
            for (int m = 0; m < N; ++m)
                for (int n = m; n < N; ++n)
                    acc[static_cast<std::size_t>(m) * N + n] +=
                        static_cast<long double>(w * f[m] * f[n]);
        }
    }
    rep.entries.resize(acc.size());
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            rep.entries[static_cast<std::size_t>(m) * N + n] =
                static_cast<double>(acc[static_cast<std::size_t>(
                    std::min(m, n)) * N + std::max(m, n)]);
    for (int m = 0; m < N; ++m)
        for (int n = m + 1; n < N; ++n)
            rep.max_offdiag_ratio = std::max(
                rep.max_offdiag_ratio,
                std::fabs(rep.at(m, n)) /
                    std::sqrt(rep.at(m, m) * rep.at(n, n)));
    return rep;
}

struct IteratedSystemSpec {
    BaseSystem base;
    int p = 1;
    double T = 0.0;
    iters::ReverseChain chain;  // built with U = 2l, depth p

    // The t in [a,a+2l] endpoints map to the segment endpoints exactly.
    double affine_to_segment(double t) const {
        const auto& seg = chain.segments[static_cast<std::size_t>(p)];
        if (t < base.a || t > base.a + 2.0 * base.l)
            throw range_error_("affine_to_segment: t outside [a, a+2l]");
        if (t == base.a) return seg.lo;
        if (t == base.a + 2.0 * base.l) return seg.hi;
        return seg.lo + (seg.hi - seg.lo) / (2.0 * base.l) * (t - base.a);
    }

    double scale() const {  // (T+2l)^p - T^p over 2l
        const auto& seg = chain.segments[static_cast<std::size_t>(p)];
        return (seg.hi - seg.lo) / (2.0 * base.l);
    }
};

inline IteratedSystemSpec make_iterated_spec(BaseSystem base, int p, double T,
                                             const ladder::Ladder& lad) {
    if (p < 1) throw std::domain_error("iterated spec: p >= 1");
    const double twol = 2.0 * base.l;
    if (twol > iters::u_max(T))
        throw std::domain_error(
            "iterated spec: interval too long for this T; need 2l <= T/(10 ln T)");
    if (base.kind == BaseSystem::Kind::External) {
        // Theorem hypothesis is base orthogonality; probe it before allowing
        // iteration on user-supplied systems.
        std::vector<double> f;
        auto eval_all = [&base](double t, std::vector<double>& out) {
            for (std::size_t n = 0; n < out.size(); ++n)
                out[n] = base.eval(static_cast<int>(n), t);
        };
        const auto rep = gram_matrix(eval_all, 4, base.a, base.l, {});
        if (rep.max_offdiag_ratio > 1e-8)
            throw invariant_error(
                "iterated spec: external base fails the orthogonality "
                "pre-check (off-diagonal ratio " +
                std::to_string(rep.max_offdiag_ratio) + ")");
    }
    IteratedSystemSpec s{std::move(base), p, T,
                         iters::ReverseChain::build(T, twol, p, lad)};
    return s;
}

namespace detail {

// |ztilde| product along the forward orbit of rho; shared by evaluation and
// weight so the squared relation holds bitwise.
inline double orbit_weight_and_image(const IteratedSystemSpec& s,
                                     const ladder::Ladder& lad, double rho,
                                     double* image_out) {
    double w = 1.0, cur = rho;
    for (int r = 0; r < s.p; ++r) {
        w *= std::sqrt(lad.z_tilde_sq_fast(cur));
        cur = lad.phi1_fast(cur);
    }
    if (image_out) *image_out = cur;
    return w;
}

inline double clamp_to_interval(double w, double a, double twol, double T) {
    const double slack = 1e-8 * T;
    if (w < a || w > a + twol) {
        if (w >= a - slack && w <= a + twol + slack)
            return std::clamp(w, a, a + twol);
        throw invariant_error(
            "iterated eval: pulled-back argument " + std::to_string(w) +
            " outside [a, a+2l] beyond clamp slack");
    }
    return w;
}

}  // namespace detail

inline double iterated_eval(int n, double t, const IteratedSystemSpec& s,
                            const ladder::Ladder& lad) {
    const double rho = s.affine_to_segment(t);
    double image = 0.0;
    const double w = detail::orbit_weight_and_image(s, lad, rho, &image);
    const double arg = detail::clamp_to_interval(image - s.T + s.base.a,
                                                 s.base.a, 2.0 * s.base.l, s.T);
    return s.base.eval(n, arg) * w;
}

// Theorem-2 form: the squared weight, bitwise the square of the |ztilde|
// product used by iterated_eval.
inline double weight_eval(double t, const IteratedSystemSpec& s,
                          const ladder::Ladder& lad) {
    const double w =
        detail::orbit_weight_and_image(s, lad, s.affine_to_segment(t), nullptr);
    return w * w;
}

// w(t) = phi1^p(rho(t)) - T + a: an automorphism of [a, a+2l].
inline double automorphism_w(double t, const IteratedSystemSpec& s,
                             const ladder::Ladder& lad) {
    const double rho = s.affine_to_segment(t);
    double cur = rho;
    for (int r = 0; r < s.p; ++r) cur = lad.phi1_fast(cur);
    return cur - s.T + s.base.a;
}

// Nested systems f_n^{p1,p2,...}: specs listed outermost first, applied to t
// innermost first; each inner stage contributes its |ztilde| product and
// feeds its automorphism image to the next stage out.
inline double composed_eval(int n, double t,
                            const std::vector<IteratedSystemSpec>& specs,
                            const ladder::Ladder& lad) {
    if (specs.empty()) throw std::domain_error("composed_eval: empty spec list");
    for (std::size_t i = 1; i < specs.size(); ++i)
        if (specs[i].base.a != specs[0].base.a ||
            specs[i].base.l != specs[0].base.l)
            throw std::domain_error("composed_eval: stages must share [a, a+2l]");
    double weight = 1.0, cur = t;
    for (std::size_t i = specs.size(); i-- > 1;) {
        const auto& s = specs[i];
        const double rho = s.affine_to_segment(cur);
        double image = 0.0;
        weight *= detail::orbit_weight_and_image(s, lad, rho, &image);
        cur = detail::clamp_to_interval(image - s.T + s.base.a, s.base.a,
                                        2.0 * s.base.l, s.T);
    }
    return iterated_eval(n, cur, specs[0], lad) * weight;
}

// Gram helpers with shared nodes and the weight-dip refinement hint.
inline GramReport gram_of_base(const BaseSystem& base, int N) {
    auto eval_all = [&base](double t, std::vector<double>& out) {
        for (std::size_t n = 0; n < out.size(); ++n)
            out[n] = base.eval(static_cast<int>(n), t);
    };
    return gram_matrix(eval_all, N, base.a, base.l, {});
}

namespace detail {

// Largest advance of any orbit image (depths 0..p) across an input pair;
// drives the arc-equidistributed Gram panels.  With lockstep walks the maps
// are monotone, so endpoint spans bound the interior.
inline double orbit_span(const IteratedSystemSpec& s, const ladder::Ladder& lad,
                         double ta, double tb, double* out_a, double* out_b) {
    double ca = s.affine_to_segment(ta), cb = s.affine_to_segment(tb);
    double span = cb - ca;
    for (int r = 0; r < s.p; ++r) {
        ca = lad.phi1_fast(ca);
        cb = lad.phi1_fast(cb);
        span = std::max(span, cb - ca);
    }
    if (out_a) *out_a = ca;
    if (out_b) *out_b = cb;
    return span;
}

}  // namespace detail

inline GramReport gram_of_iterated(const IteratedSystemSpec& s, int N,
                                   const ladder::Ladder& lad) {
    auto eval_all = [&s, &lad](double t, std::vector<double>& out) {
        const double rho = s.affine_to_segment(t);
        double image = 0.0;
        const double w = detail::orbit_weight_and_image(s, lad, rho, &image);
        const double arg = detail::clamp_to_interval(
            image - s.T + s.base.a, s.base.a, 2.0 * s.base.l, s.T);
        for (std::size_t n = 0; n < out.size(); ++n)
            out[n] = s.base.eval(static_cast<int>(n), arg) * w;
    };
    GramOptions opt;
    opt.osc_scale_t = s.T;
    opt.span_probe = [&s, &lad](double ta, double tb) {
        return detail::orbit_span(s, lad, ta, tb, nullptr, nullptr);
    };
    GramReport rep = gram_matrix(eval_all, N, s.base.a, s.base.l, opt);
    rep.diag_scale = 1.0 / s.scale();
    return rep;
}

inline GramReport gram_of_composed(const std::vector<IteratedSystemSpec>& specs,
                                   int N, const ladder::Ladder& lad) {
    auto eval_all = [&specs, &lad](double t, std::vector<double>& out) {
        for (std::size_t n = 0; n < out.size(); ++n)
            out[n] = composed_eval(static_cast<int>(n), t, specs, lad);
    };
    GramOptions opt;
    opt.osc_scale_t = specs.front().T;
    opt.span_probe = [&specs, &lad](double ta, double tb) {
        double span = 0.0, ca = ta, cb = tb;
        for (std::size_t i = specs.size(); i-- > 1;) {
            const auto& s = specs[i];
            double ia = 0.0, ib = 0.0;
            span = std::max(span, detail::orbit_span(s, lad, ca, cb, &ia, &ib));
            ca = std::clamp(ia - s.T + s.base.a, s.base.a,
                            s.base.a + 2.0 * s.base.l);
            cb = std::clamp(ib - s.T + s.base.a, s.base.a,
                            s.base.a + 2.0 * s.base.l);
        }
        span = std::max(span, detail::orbit_span(specs[0], lad, ca, cb,
                                                 nullptr, nullptr));
        return span;
    };
    GramReport rep =
        gram_matrix(eval_all, N, specs[0].base.a, specs[0].base.l, opt);
    double sc = 1.0;
    for (const auto& s : specs) sc *= s.scale();
    rep.diag_scale = 1.0 / sc;
    return rep;
}

}  // namespace zladder::orthosys
