#pragma once

#include <string>

#include "gramsum/quad.hpp"

namespace gramsum {

/// Below this abscissa the Stirling-type expansion is not used; theta()
/// delegates to the extended-precision oracle instead.
inline constexpr double kThetaAsymptoticFloor = 100.0;

struct ThetaEval {
  Quad t = 0;
  Quad value = 0;       // radians
  Quad deriv = 0;       // radians per unit t
  double err_bound = 0; // bound on |value - theta(t)|
};

/// Riemann-Siegel theta. Uses the asymptotic expansion for t >= 100 and the
/// MPFR oracle below that.
ThetaEval theta(Quad t);

/// Asymptotic expansion only:
///   (t/2) ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760t^3).
/// err_bound is twice the first omitted term 31/(80640 t^5) plus rounding.
/// Throws std::domain_error for t < kThetaAsymptoticFloor.
ThetaEval theta_asymptotic(Quad t);

/// -(t/2) ln(pi) + Im lnGamma(1/4 + i t/2) evaluated in MPFR with enough
/// working precision for `digits` significant decimal digits. The result is
/// rounded to quad, so requests beyond ~33 digits only help the rounding.
/// Throws std::domain_error for t <= 0.
Quad theta_oracle(Quad t, int digits = 30);

/// theta'(t) = -(1/2) ln(pi) + (1/2) Re digamma(1/4 + i t/2), same machinery.
Quad theta_oracle_deriv(Quad t, int digits = 30);

/// Oracle value as a decimal string with `digits` significant digits; not
/// limited by quad range.
std::string theta_oracle_decimal(Quad t, int digits);

}  // namespace gramsum
