#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "zladder/quadrature.hpp"
#include "zladder/roots.hpp"

using namespace zladder;

TEST_CASE("Gauss-Legendre rule basics") {
    const auto& gl = quad::gauss_legendre<32>();
    double wsum = 0.0;
    for (double w : gl.w) wsum += w;
    CHECK(wsum == Catch::Approx(2.0).epsilon(1e-14));
    // symmetric nodes
    for (int i = 0; i < 16; ++i)
        CHECK(gl.x[i] == Catch::Approx(-gl.x[31 - i]).margin(1e-14));
    // exact for degree 40 polynomial (<= 63)
    double s = 0.0;
    for (int i = 0; i < 32; ++i) s += gl.w[i] * std::pow(gl.x[i], 40);
    CHECK(s == Catch::Approx(2.0 / 41.0).epsilon(1e-13));
}

TEST_CASE("panel and adaptive integration") {
    auto f = [](double x) { return std::exp(x); };
    const double exact = std::exp(1.0) - 1.0;
    CHECK(quad::panel(f, 0.0, 1.0, quad::gauss_legendre<16>()) ==
          Catch::Approx(exact).epsilon(1e-14));
    CHECK(quad::adaptive(f, 0.0, 1.0) == Catch::Approx(exact).epsilon(1e-12));

    // oscillatory: int_0^{20pi} sin = 0, int |cos| style magnitude checks
    const double s = quad::adaptive([](double x) { return std::sin(x); }, 0.0,
                                    20.0 * kPi, 1e-12, 1e-12);
    CHECK(std::fabs(s) < 1e-10);
    const double c = quad::adaptive([](double x) { return std::cos(3.7 * x); },
                                    0.0, 5.0, 1e-12, 1e-14);
    CHECK(c == Catch::Approx(std::sin(3.7 * 5.0) / 3.7).epsilon(1e-11));
}

TEST_CASE("brent root finding") {
    const double r = roots::brent([](double x) { return std::cos(x); }, 1.0, 2.0);
    CHECK(r == Catch::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(
        roots::brent([](double x) { return 1.0 + x * x; }, -1.0, 1.0),
        bracket_error);
    // expand_bracket walks right until the sign flips
    auto f = [](double x) { return x - 100.0; };
    auto [lo, hi] = roots::expand_bracket(f, 1.0, 2.0, 1e6, f(1.0), f(2.0));
    CHECK(lo < 100.0);
    CHECK(hi >= 100.0);
    CHECK_THROWS_AS(roots::expand_bracket(f, 1.0, 2.0, 50.0, f(1.0), f(2.0)),
                    bracket_error);
}
