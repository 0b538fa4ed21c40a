#pragma once

// Thin layer over GCC's binary128 type. All abscissas and theta values are
// carried in quad precision: at t ~ 1e9 the phase theta(t) ~ 1e10, and a
// double cannot hold it to better than ~1e-6.

#include <quadmath.h>

#include <string>
#include <string_view>

namespace gramsum {

using Quad = __float128;

inline const Quad kQuadPi = M_PIq;
inline const Quad kQuadTwoPi = 2 * M_PIq;
inline const Quad kQuadLnPi = 1.144729885849400174143427351353058712Q;
inline const Quad kQuadEpsilon = FLT128_EPSILON;

inline Quad qabs(Quad x) { return fabsq(x); }

/// Formats `x` with `digits` significant digits (%.*Qg).
std::string quad_to_string(Quad x, int digits = 36);

/// Parses a decimal literal at full quad precision. Throws std::invalid_argument.
Quad parse_quad(std::string_view text);

}  // namespace gramsum
