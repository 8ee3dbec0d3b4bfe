#pragma once

#include <cmath>

namespace zladder {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647693;

// Euler's constant c and friends.  one_minus_c is stored explicitly so the
// complementarity checks use exactly 1 - c.
struct Constants {
    double euler_c = 0.57721566490153286061;
    double ln_2pi = 1.83787706640934548356;
    double one_minus_c = 1.0 - 0.57721566490153286061;
    // Additive constant of the almost-exact Hardy-Littlewood representation,
    // estimated by least squares over log-spaced T in [2e3, 1.6e4] with
    // weights (T/ln T)^2 (see Ladder::fit_c0).  Not a closed form.
    double c0_estimate = 3.14141;
};

inline constexpr Constants kConst{};

}  // namespace zladder
