#include "gramsum/theta.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace gramsum {

std::string quad_to_string(Quad x, int digits) {
  char buf[128];
  quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
  return buf;
}

Quad parse_quad(std::string_view text) {
  std::string s(text);
  char* end = nullptr;
  Quad v = strtoflt128(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

ThetaEval theta_asymptotic(Quad t) {
  if (!(t >= kThetaAsymptoticFloor)) {
    throw std::domain_error("theta_asymptotic: t = " + quad_to_string(t, 12) +
                            " is below the asymptotic floor");
  }
  const Quad inv = 1 / t;
  const Quad inv2 = inv * inv;
  const Quad log_ratio = logq(t / kQuadTwoPi);

  ThetaEval e;
  e.t = t;
  e.value = t / 2 * log_ratio - t / 2 - kQuadPi / 8 +
            inv * (Quad(1) / 48 + inv2 * (Quad(7) / 5760));
  e.deriv = log_ratio / 2 - inv2 * (Quad(1) / 48 + inv2 * (Quad(7) / 1920));

  const double first_omitted =
      static_cast<double>(Quad(31) / 80640 * inv * inv2 * inv2);
  e.err_bound = 2 * first_omitted +
                static_cast<double>(64 * kQuadEpsilon * qabs(e.value));
  return e;
}

ThetaEval theta(Quad t) {
  if (t >= kThetaAsymptoticFloor) return theta_asymptotic(t);
  ThetaEval e;
  e.t = t;
  e.value = theta_oracle(t, 36);
  e.deriv = theta_oracle_deriv(t, 36);
  e.err_bound = static_cast<double>(4 * kQuadEpsilon * (1 + qabs(e.value)));
  return e;
}

}  // namespace gramsum
