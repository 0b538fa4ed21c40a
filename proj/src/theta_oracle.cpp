// Extended-precision reference for theta and theta' built on MPFR.
//
// lnGamma(z) for z = 1/4 + i t/2 uses the Stirling series on z + N, with the
// shift N chosen so |z + N| exceeds the radius where the series' smallest
// term drops below 2^-prec, then the recurrence
//   lnGamma(z) = lnGamma(z + N) - sum_{j<N} ln(z + j).
// Principal logarithms are continuous on Re z > 0, so this yields the
// continuous branch of Im lnGamma that theta is defined with.
//
// Stirling coefficients B_2k / (2k(2k-1)) come from
//   B_2k = (-1)^(k+1) 2 (2k)! zeta(2k) / (2 pi)^(2k).

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gramsum/theta.hpp"

namespace gramsum {
namespace {

class MpReal {
 public:
  explicit MpReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_ui(v_, 0, MPFR_RNDN); }
  MpReal(const MpReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

constexpr auto kRnd = MPFR_RNDN;

void set_quad(MpReal& x, Quad q) {
  // Three doubles cover all 113 significand bits exactly.
  const double h = static_cast<double>(q);
  const Quad r = q - h;
  const double m = static_cast<double>(r);
  const double l = static_cast<double>(r - m);
  mpfr_set_d(x.get(), h, kRnd);
  mpfr_add_d(x.get(), x.get(), m, kRnd);
  mpfr_add_d(x.get(), x.get(), l, kRnd);
}

Quad get_quad(const MpReal& x) {
  MpReal y(x);
  const double h = mpfr_get_d(y.get(), kRnd);
  mpfr_sub_d(y.get(), y.get(), h, kRnd);
  const double m = mpfr_get_d(y.get(), kRnd);
  mpfr_sub_d(y.get(), y.get(), m, kRnd);
  const double l = mpfr_get_d(y.get(), kRnd);
  return static_cast<Quad>(h) + static_cast<Quad>(m) + static_cast<Quad>(l);
}

mpfr_prec_t precision_for(int digits) {
  const int d = std::max(digits, 1);
  return std::max<mpfr_prec_t>(192, static_cast<mpfr_prec_t>(std::ceil(d * 3.3219280948873623)) + 64);
}

// Complex helpers on (re, im) pairs.
struct MpComplex {
  MpReal re, im;
  explicit MpComplex(mpfr_prec_t p) : re(p), im(p) {}
};

void cmul(MpComplex& out, const MpComplex& x, const MpComplex& y, mpfr_prec_t p) {
  MpReal a(p), b(p);
  mpfr_mul(a.get(), x.re.get(), y.re.get(), kRnd);
  mpfr_mul(b.get(), x.im.get(), y.im.get(), kRnd);
  MpReal re(p);
  mpfr_sub(re.get(), a.get(), b.get(), kRnd);
  mpfr_mul(a.get(), x.re.get(), y.im.get(), kRnd);
  mpfr_mul(b.get(), x.im.get(), y.re.get(), kRnd);
  mpfr_add(out.im.get(), a.get(), b.get(), kRnd);
  mpfr_set(out.re.get(), re.get(), kRnd);
}

struct OracleParts {
  MpReal theta;
  MpReal deriv;
  explicit OracleParts(mpfr_prec_t p) : theta(p), deriv(p) {}
};

OracleParts evaluate(Quad t, int digits, bool want_deriv) {
  if (!(t > 0)) {
    throw std::domain_error("theta_oracle: t must be positive");
  }
  const mpfr_prec_t p = precision_for(digits);

  MpReal a(p), b(p);
  mpfr_set_d(a.get(), 0.25, kRnd);
  set_quad(b, t);
  mpfr_div_2ui(b.get(), b.get(), 1, kRnd);  // b = t/2

  // Shift so that |z + N| >= radius. The smallest Stirling term near
  // |w| behaves like exp(-2 pi |w|).
  const double radius = 0.12 * static_cast<double>(p) + 4.0;
  const double abs_z = std::hypot(0.25, static_cast<double>(t) / 2);
  const long shift = abs_z >= radius ? 0 : static_cast<long>(std::ceil(radius));

  MpReal big_a(p);
  mpfr_add_si(big_a.get(), a.get(), shift, kRnd);

  MpReal norm2(p), tmp(p), tmp2(p);
  mpfr_sqr(norm2.get(), big_a.get(), kRnd);
  mpfr_sqr(tmp.get(), b.get(), kRnd);
  mpfr_add(norm2.get(), norm2.get(), tmp.get(), kRnd);

  MpReal log_abs(p), arg(p);
  mpfr_log(log_abs.get(), norm2.get(), kRnd);
  mpfr_div_2ui(log_abs.get(), log_abs.get(), 1, kRnd);
  mpfr_atan2(arg.get(), b.get(), big_a.get(), kRnd);

  // Im[(w - 1/2) ln w - w]
  MpReal im_lg(p);
  mpfr_sub_d(tmp.get(), big_a.get(), 0.5, kRnd);
  mpfr_mul(im_lg.get(), tmp.get(), arg.get(), kRnd);
  mpfr_mul(tmp.get(), b.get(), log_abs.get(), kRnd);
  mpfr_add(im_lg.get(), im_lg.get(), tmp.get(), kRnd);
  mpfr_sub(im_lg.get(), im_lg.get(), b.get(), kRnd);

  // Re digamma(w) leading part: ln|w| - Re(1/(2w)) = ln|w| - A/(2|w|^2)
  MpReal re_psi(p);
  mpfr_div(tmp.get(), big_a.get(), norm2.get(), kRnd);
  mpfr_div_2ui(tmp.get(), tmp.get(), 1, kRnd);
  mpfr_sub(re_psi.get(), log_abs.get(), tmp.get(), kRnd);

  // u = 1/w, u2 = u^2
  MpComplex u(p), u2(p), pw(p), qw(p);
  mpfr_div(u.re.get(), big_a.get(), norm2.get(), kRnd);
  mpfr_div(u.im.get(), b.get(), norm2.get(), kRnd);
  mpfr_neg(u.im.get(), u.im.get(), kRnd);
  cmul(u2, u, u, p);
  mpfr_set(pw.re.get(), u.re.get(), kRnd);  // w^{1-2k}, starts at k = 1
  mpfr_set(pw.im.get(), u.im.get(), kRnd);
  mpfr_set(qw.re.get(), u2.re.get(), kRnd);  // w^{-2k}
  mpfr_set(qw.im.get(), u2.im.get(), kRnd);

  MpReal four_pi_sq(p), f(p), coef(p), zeta(p), term(p), mag(p), eps(p);
  mpfr_const_pi(four_pi_sq.get(), kRnd);
  mpfr_sqr(four_pi_sq.get(), four_pi_sq.get(), kRnd);
  mpfr_mul_ui(four_pi_sq.get(), four_pi_sq.get(), 4, kRnd);
  mpfr_ui_div(f.get(), 2, four_pi_sq.get(), kRnd);  // f_1 = 2 / (2pi)^2
  mpfr_set_ui_2exp(eps.get(), 1, -p, kRnd);

  MpReal abs_u(p);
  mpfr_sqrt(abs_u.get(), norm2.get(), kRnd);
  mpfr_ui_div(abs_u.get(), 1, abs_u.get(), kRnd);
  MpReal abs_pw(abs_u);

  MpReal prev_mag(p);
  mpfr_set_inf(prev_mag.get(), 1);
  for (unsigned long k = 1; k < 4000; ++k) {
    mpfr_zeta_ui(zeta.get(), 2 * k, kRnd);
    mpfr_mul(coef.get(), f.get(), zeta.get(), kRnd);
    if (k % 2 == 0) mpfr_neg(coef.get(), coef.get(), kRnd);

    mpfr_mul(term.get(), coef.get(), pw.im.get(), kRnd);
    mpfr_add(im_lg.get(), im_lg.get(), term.get(), kRnd);

    if (want_deriv) {
      // B_2k/(2k) = coef * (2k - 1)
      mpfr_mul_ui(term.get(), coef.get(), 2 * k - 1, kRnd);
      mpfr_mul(term.get(), term.get(), qw.re.get(), kRnd);
      mpfr_sub(re_psi.get(), re_psi.get(), term.get(), kRnd);
    }

    mpfr_mul(mag.get(), coef.get(), abs_pw.get(), kRnd);
    mpfr_abs(mag.get(), mag.get(), kRnd);
    mpfr_mul_ui(mag.get(), mag.get(), 2 * k + 1, kRnd);
    if (mpfr_cmp(mag.get(), eps.get()) < 0) break;
    if (mpfr_cmp(mag.get(), prev_mag.get()) > 0) {
      throw std::runtime_error("theta_oracle: Stirling series diverged; shift too small");
    }
    mpfr_set(prev_mag.get(), mag.get(), kRnd);

    cmul(pw, pw, u2, p);
    cmul(qw, qw, u2, p);
    mpfr_mul(abs_pw.get(), abs_pw.get(), abs_u.get(), kRnd);
    mpfr_mul(abs_pw.get(), abs_pw.get(), abs_u.get(), kRnd);
    mpfr_mul_ui(f.get(), f.get(), (2 * k - 1) * (2 * k), kRnd);
    mpfr_div(f.get(), f.get(), four_pi_sq.get(), kRnd);
  }

  // Undo the shift.
  for (long j = 0; j < shift; ++j) {
    mpfr_add_si(tmp.get(), a.get(), j, kRnd);
    mpfr_atan2(tmp2.get(), b.get(), tmp.get(), kRnd);
    mpfr_sub(im_lg.get(), im_lg.get(), tmp2.get(), kRnd);
    if (want_deriv) {
      MpReal den(p);
      mpfr_sqr(den.get(), tmp.get(), kRnd);
      mpfr_sqr(tmp2.get(), b.get(), kRnd);
      mpfr_add(den.get(), den.get(), tmp2.get(), kRnd);
      mpfr_div(tmp.get(), tmp.get(), den.get(), kRnd);
      mpfr_sub(re_psi.get(), re_psi.get(), tmp.get(), kRnd);
    }
  }

  OracleParts out(p);
  MpReal ln_pi(p);
  mpfr_const_pi(ln_pi.get(), kRnd);
  mpfr_log(ln_pi.get(), ln_pi.get(), kRnd);

  // theta = -(t/2) ln pi + Im lnGamma = -b ln pi + Im lnGamma
  mpfr_mul(tmp.get(), b.get(), ln_pi.get(), kRnd);
  mpfr_sub(out.theta.get(), im_lg.get(), tmp.get(), kRnd);

  if (want_deriv) {
    mpfr_sub(out.deriv.get(), re_psi.get(), ln_pi.get(), kRnd);
    mpfr_div_2ui(out.deriv.get(), out.deriv.get(), 1, kRnd);
  }
  return out;
}

}  // namespace

Quad theta_oracle(Quad t, int digits) {
  return get_quad(evaluate(t, digits, false).theta);
}

Quad theta_oracle_deriv(Quad t, int digits) {
  return get_quad(evaluate(t, digits, true).deriv);
}

std::string theta_oracle_decimal(Quad t, int digits) {
  const OracleParts parts = evaluate(t, digits, false);
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", std::max(digits, 1), parts.theta.get());
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace gramsum
