#pragma once

// Forward iterates phi1^k, reverse iterates T^k = phi1^{-k}(T), the reverse
// segment chain [T^k, (T+U)^k] with its ordering/image invariants, and the
// change-of-variables identity
//   int_T^{T+U} g = int over segment k of g[phi1^k(t)] prod_r ztilde^2[phi1^r(t)]
// which is exact for any increasing phi1 with ztilde^2 = phi1'.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zladder/constants.hpp"
#include "zladder/errors.hpp"
#include "zladder/ladder.hpp"
#include "zladder/quadrature.hpp"

namespace zladder::iters {

struct IterSegment {
    int k = 0;
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

// U admissibility: the o(T/ln T) hypothesis pinned to U <= gate * T / ln T.
inline constexpr double kAdmissibilityGate = 0.1;

inline double u_max(double T) { return kAdmissibilityGate * T / std::log(T); }

inline void require_admissible_u(double T, double U, bool override_gate) {
    if (!(U > 0.0)) throw std::domain_error("chain: U must be positive");
    if (!override_gate && U > u_max(T))
        throw std::domain_error(
            "chain: inadmissible U = " + std::to_string(U) +
            "; gate requires U <= T/(10 ln T) = " + std::to_string(u_max(T)));
}

inline double forward_iterate(double t, int k, const ladder::Ladder& lad) {
    if (k < 0) throw std::domain_error("forward_iterate: k >= 0 required");
    double cur = t;
    for (int r = 0; r < k; ++r) {
        if (cur < lad.config().T0)
            throw std::underflow_error(
                "forward_iterate: iterate " + std::to_string(r) +
                " fell below T0 = " + std::to_string(lad.config().T0));
        cur = lad.phi1(cur);
    }
    return cur;
}

inline double reverse_point(double T, int k, const ladder::Ladder& lad) {
    if (k < 0) throw std::domain_error("reverse_point: k >= 0 required");
    double cur = T;
    for (int r = 0; r < k; ++r) cur = lad.phi1_inverse(cur);
    return cur;
}

class ReverseChain {
  public:
    double T = 0.0, U = 0.0;
    int k_max = 0;
    std::vector<IterSegment> segments;  // k = 0 .. k_max

    static ReverseChain build(double T, double U, int k_max,
                              const ladder::Ladder& lad,
                              bool override_gate = false) {
        require_admissible_u(T, U, override_gate);
        if (k_max < 0) throw std::domain_error("chain: k_max >= 0 required");
        ReverseChain c;
        c.T = T;
        c.U = U;
        c.k_max = k_max;
        c.segments.push_back({0, T, T + U});
        for (int k = 1; k <= k_max; ++k) {
            const auto& prev = c.segments.back();
            c.segments.push_back({k, lad.phi1_inverse(prev.lo),
                                  lad.phi1_inverse(prev.hi)});
        }
        c.verify(lad);
        return c;
    }

    // Declared invariants, checked at build time: positive lengths, strict
    // left-to-right ordering in k, and the image property
    // phi1([T^k, (T+U)^k]) = [T^{k-1}, (T+U)^{k-1}] at the endpoints.
    void verify(const ladder::Ladder& lad) const {
        const double tol = 1e-8 * T;
        for (int k = 0; k <= k_max; ++k) {
            const auto& s = segments[static_cast<std::size_t>(k)];
            if (!(s.lo < s.hi))
                throw invariant_error("chain: segment " + std::to_string(k) +
                                      " has nonpositive length");
            if (k == 0) continue;
            const auto& prev = segments[static_cast<std::size_t>(k - 1)];
            if (!(prev.hi < s.lo))
                throw invariant_error("chain: segments " + std::to_string(k - 1) +
                                      " and " + std::to_string(k) +
                                      " violate the ordering");
            if (std::fabs(lad.phi1(s.lo) - prev.lo) > tol ||
                std::fabs(lad.phi1(s.hi) - prev.hi) > tol)
                throw invariant_error("chain: image of segment " +
                                      std::to_string(k) +
                                      " misses segment " + std::to_string(k - 1));
        }
    }

    double gap(int k) const {  // distance between segments k-1 and k
        if (k < 1 || k > k_max) throw std::out_of_range("chain gap index");
        return segments[static_cast<std::size_t>(k)].lo -
               segments[static_cast<std::size_t>(k - 1)].hi;
    }
};

// Disconnected union of the first k+1 chain segments.
struct DeltaSet {
    const ReverseChain* chain;
    int k;
    DeltaSet(const ReverseChain& c, int k_) : chain(&c), k(k_) {
        if (k_ < 0 || k_ > c.k_max)
            throw std::out_of_range("DeltaSet: k outside chain depth");
        for (int r = 1; r <= k_; ++r)
            if (!(c.gap(r) > 0.0))
                throw invariant_error("DeltaSet: components not disconnected");
    }
    std::size_t components() const { return static_cast<std::size_t>(k) + 1; }
};

// phi1^r(t) for r = 0..k with the membership assertion of each image in
// segment k-r; values within 1e-8 T of an endpoint are clamped in, beyond
// that it is an error naming the offending r.
inline std::vector<double> forward_membership(double t, const ReverseChain& c,
                                              int k, const ladder::Ladder& lad) {
    if (k < 0 || k > c.k_max)
        throw std::out_of_range("forward_membership: k outside chain depth");
    const double clamp = 1e-8 * c.T;
    std::vector<double> images;
    double cur = t;
    for (int r = 0; r <= k; ++r) {
        const auto& seg = c.segments[static_cast<std::size_t>(k - r)];
        if (cur < seg.lo || cur > seg.hi) {
            if (cur >= seg.lo - clamp && cur <= seg.hi + clamp) {
                cur = std::clamp(cur, seg.lo, seg.hi);
            } else {
                throw invariant_error(
                    "forward_membership: image r = " + std::to_string(r) +
                    " at " + std::to_string(cur) + " misses segment " +
                    std::to_string(k - r));
            }
        }
        images.push_back(cur);
        if (r < k) cur = lad.phi1(cur);
    }
    return images;
}

struct TransformResult {
    double lhs = 0.0;  // int_T^{T+U} g
    double rhs = 0.0;  // depth-k weighted integral over segment k
};

namespace detail {

// Panel integration of g[phi1^depth(t)] * prod_{r<depth} ztilde^2[phi1^r(t)]
// over [lo, hi].  Panel width shrinks with depth: the weight product carries
// roughly depth-fold the bandwidth of a single ztilde^2.
template <class G>
double weighted_pullback(G&& g, double lo, double hi, int depth,
                         const ladder::Ladder& lad) {
    const double osc =
        kTwoPi / std::max(1.0, std::log(std::max(lo, 1.0) / kTwoPi));
    const double width = 1.2 * osc / (depth + 1);
    const auto n_panels =
        static_cast<std::size_t>(std::ceil((hi - lo) / width));
    const auto& gl = quad::gauss_legendre<16>();
    long double acc = 0.0L;
    for (std::size_t p = 0; p < n_panels; ++p) {
        const double a = lo + (hi - lo) * static_cast<double>(p) /
                                  static_cast<double>(n_panels);
        const double b = lo + (hi - lo) * static_cast<double>(p + 1) /
                                  static_cast<double>(n_panels);
        const double c = 0.5 * (a + b), hh = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const double t = c + hh * gl.x[i];
            double w = 1.0, cur = t;
            for (int r = 0; r < depth; ++r) {
                w *= lad.z_tilde_sq_fast(cur);
                cur = lad.phi1_fast(cur);
            }
            s += gl.w[i] * g(cur) * w;
        }
        acc += static_cast<long double>(s) * hh;
    }
    return static_cast<double>(acc);
}

}  // namespace detail

template <class G>
TransformResult transform_integral(G&& g, double T, double U, int k,
                                   const ladder::Ladder& lad,
                                   bool override_gate = false) {
    if (k < 0) throw std::domain_error("transform_integral: k >= 0");
    const ReverseChain chain = ReverseChain::build(T, U, k, lad, override_gate);
    TransformResult r;
    r.lhs = detail::weighted_pullback(g, T, T + U, 0, lad);
    const auto& seg = chain.segments[static_cast<std::size_t>(k)];
    r.rhs = detail::weighted_pullback(g, seg.lo, seg.hi, k, lad);
    return r;
}

}  // namespace zladder::iters
