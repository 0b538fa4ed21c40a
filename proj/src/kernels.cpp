#include "gramsum/kernels.hpp"

#include <cmath>
#include <string>

#include "gramsum/compensated.hpp"

namespace gramsum {
namespace {

// 2pi = kTwoPi1 + kTwoPi2 + kTwoPi3 to about 160 bits.
constexpr double kTwoPi1 = 6.283185307179586;
constexpr double kTwoPi2 = 2.4492935982947064e-16;
constexpr double kTwoPi3 = -5.989539619436679e-33;
constexpr double kInvTwoPi = 0.15915494309189535;

struct Phases {
  std::vector<double> c, s;
};

Phases phases(const RangeTable& table, DoubleDouble t) {
  const auto& logs = table.log_n();
  Phases p;
  p.c.resize(logs.size());
  p.s.resize(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    ::sincos(reduce_two_pi(t * logs[i]), &p.s[i], &p.c[i]);
  }
  return p;
}

double weighted_diag(const RangeTable& table, DoubleDouble t, const std::vector<double>& weights) {
  const DoubleDouble two_t{2 * t.hi, 2 * t.lo};
  const auto& logs = table.log_n();
  CompensatedSum acc;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    acc += weights[i] * std::cos(reduce_two_pi(two_t * logs[i]));
  }
  return acc.value();
}

double plain_sum(const std::vector<double>& v) {
  CompensatedSum acc;
  for (double x : v) acc += x;
  return acc.value();
}

void check_cap(const RangeTable& table, std::int64_t cap) {
  if (table.range().count > cap) throw CapExceeded(table.range().count, cap);
}

}  // namespace

NRange n_range(double P0, double K) {
  if (!(P0 > 0) || !(K > 0)) throw std::invalid_argument("n_range: P0 and K must be positive");
  NRange r;
  r.hi = P0;
  r.lo = std::exp(-1.0 / K) * P0;
  r.n_min = static_cast<std::int64_t>(std::floor(r.lo)) + 1;
  r.n_max = static_cast<std::int64_t>(std::ceil(r.hi)) - 1;
  if (r.n_min < 1) r.n_min = 1;
  r.count = r.n_max >= r.n_min ? r.n_max - r.n_min + 1 : 0;
  return r;
}

double reduce_two_pi(DoubleDouble x) {
  const double k = std::floor(x.hi * kInvTwoPi);
  DoubleDouble r = x - two_prod(k, kTwoPi1);
  r = r - two_prod(k, kTwoPi2);
  double v = r.hi + (r.lo - k * kTwoPi3);
  if (v < 0) v += kTwoPi1;
  if (v >= kTwoPi1) v -= kTwoPi1;
  return v;
}

double phase_reduce(DoubleDouble t, DoubleDouble ln_n) { return reduce_two_pi(t * ln_n); }

double phase_reduce(double t, double ln_n) { return reduce_two_pi(two_prod(t, ln_n)); }

CapExceeded::CapExceeded(std::int64_t count, std::int64_t cap)
    : std::length_error("range of " + std::to_string(count) + " terms exceeds the pair-sum cap of " +
                        std::to_string(cap)) {}

RangeTable::RangeTable(const NRange& range, double P0) : range_(range), p0_(P0) {
  const auto n = static_cast<std::size_t>(range.count);
  log_n_.reserve(n);
  inv_sqrt_n_.reserve(n);
  inv_n_.reserve(n);
  alpha_.reserve(n);
  w1_weight_.reserve(n);
  for (std::int64_t k = range.n_min; k <= range.n_max; ++k) {
    const double x = static_cast<double>(k);
    log_n_.push_back(to_double_double(logq(static_cast<Quad>(k))));
    const double isq = 1.0 / std::sqrt(x);
    inv_sqrt_n_.push_back(isq);
    inv_n_.push_back(1.0 / x);
    // 1 - sqrt(n/P0) without the cancellation near n = P0.
    const double a = (P0 - x) / (P0 * (1.0 + std::sqrt(x / P0)));
    alpha_.push_back(a);
    w1_weight_.push_back(a * isq);
  }
}

PointSums evaluate_point(const RangeTable& table, DoubleDouble t) {
  const auto& logs = table.log_n();
  const auto& a = table.inv_sqrt_n();
  const auto& b = table.w1_weight();
  CompensatedSum re, im, w, w1;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    double s, c;
    ::sincos(reduce_two_pi(t * logs[i]), &s, &c);
    re += c;
    im += s;
    w += a[i] * c;
    w1 += b[i] * c;
  }
  PointSums out;
  out.S = re.value();
  out.S_star_mag = std::hypot(re.value(), im.value());
  out.w = w.value();
  out.w1 = w1.value();
  return out;
}

SumValues evaluate_sums(const RangeTable& table, DoubleDouble t, bool with_pairs,
                        std::int64_t cap) {
  const PointSums p = evaluate_point(table, t);
  SumValues v;
  v.S = p.S;
  v.S_star_mag = p.S_star_mag;
  v.w = p.w;
  v.w1 = p.w1;
  v.diag_cos = weighted_diag(table, t, table.inv_n());
  v.harmonic = plain_sum(table.inv_n());
  if (with_pairs) {
    const PairSums ps = pair_sums(table, t, table.inv_sqrt_n(), cap);
    v.w2 = ps.difference;
    v.w3 = ps.sum;
  }
  return v;
}

double sum_S(DoubleDouble t, const NRange& r) {
  return evaluate_point(RangeTable(r, r.hi), t).S;
}

double sum_S_star_mag(DoubleDouble t, const NRange& r) {
  return evaluate_point(RangeTable(r, r.hi), t).S_star_mag;
}

double sum_w(DoubleDouble t, const NRange& r) {
  return evaluate_point(RangeTable(r, r.hi), t).w;
}

double sum_w1(DoubleDouble t, const NRange& r, double P0) {
  return evaluate_point(RangeTable(r, P0), t).w1;
}

double diag_cos(DoubleDouble t, const NRange& r) {
  const RangeTable table(r, r.hi);
  return weighted_diag(table, t, table.inv_n());
}

double harmonic_sum(const NRange& r) {
  CompensatedSum acc;
  for (std::int64_t n = r.n_min; n <= r.n_max; ++n) acc += 1.0 / static_cast<double>(n);
  return acc.value();
}

PairSums pair_sums(const RangeTable& table, DoubleDouble t, const std::vector<double>& weights,
                   std::int64_t cap) {
  check_cap(table, cap);
  const Phases ph = phases(table, t);
  const std::size_t n = ph.c.size();
  // cos(t ln(n/m)) = c_n c_m + s_n s_m,  cos(t ln(nm)) = c_n c_m - s_n s_m
  CompensatedSum diff, sum;
  for (std::size_t j = 1; j < n; ++j) {
    const double cj = ph.c[j];
    const double sj = ph.s[j];
    double row_diff = 0.0;
    double row_sum = 0.0;
    for (std::size_t i = 0; i < j; ++i) {
      const double cc = ph.c[i] * cj;
      const double ss = ph.s[i] * sj;
      row_diff += weights[i] * (cc + ss);
      row_sum += weights[i] * (cc - ss);
    }
    diff += weights[j] * row_diff;
    sum += weights[j] * row_sum;
  }
  return {diff.value(), sum.value()};
}

double double_sum_w2(DoubleDouble t, const NRange& r, std::int64_t cap) {
  if (r.count > cap) throw CapExceeded(r.count, cap);
  const RangeTable table(r, r.hi);
  return pair_sums(table, t, table.inv_sqrt_n(), cap).difference;
}

double double_sum_w3(DoubleDouble t, const NRange& r, std::int64_t cap) {
  if (r.count > cap) throw CapExceeded(r.count, cap);
  const RangeTable table(r, r.hi);
  return pair_sums(table, t, table.inv_sqrt_n(), cap).sum;
}

WSquaredParts decompose_w_squared(const RangeTable& table, DoubleDouble t, std::int64_t cap) {
  check_cap(table, cap);
  WSquaredParts out;
  const double w = evaluate_point(table, t).w;
  out.w_sq = w * w;
  out.half_harmonic = 0.5 * plain_sum(table.inv_n());
  const PairSums ps = pair_sums(table, t, table.inv_sqrt_n(), cap);
  out.w2 = ps.difference;
  out.w3 = ps.sum;
  out.half_diag = 0.5 * weighted_diag(table, t, table.inv_n());

  CompensatedSum parts;
  parts += out.half_harmonic;
  parts += out.w2;
  parts += out.w3;
  parts += out.half_diag;
  out.residual = out.w_sq - parts.value();
  return out;
}

WSquaredParts decompose_w_squared(DoubleDouble t, const NRange& r, std::int64_t cap) {
  if (r.count > cap) throw CapExceeded(r.count, cap);
  return decompose_w_squared(RangeTable(r, r.hi), t, cap);
}

W1SquaredParts decompose_w1_squared(const RangeTable& table, DoubleDouble t, std::int64_t cap) {
  check_cap(table, cap);
  W1SquaredParts out;
  const double w1 = evaluate_point(table, t).w1;
  out.w1_sq = w1 * w1;

  std::vector<double> alpha_sq_over_n(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    alpha_sq_over_n[i] = table.alpha()[i] * table.alpha()[i] * table.inv_n()[i];
  }
  out.half_wbar1 = 0.5 * plain_sum(alpha_sq_over_n);
  const PairSums ps = pair_sums(table, t, table.w1_weight(), cap);
  out.wbar2 = ps.difference;
  out.wbar3 = ps.sum;
  out.half_wbar4 = 0.5 * weighted_diag(table, t, alpha_sq_over_n);

  CompensatedSum parts;
  parts += out.half_wbar1;
  parts += out.wbar2;
  parts += out.wbar3;
  parts += out.half_wbar4;
  out.residual = out.w1_sq - parts.value();
  return out;
}

W1SquaredParts decompose_w1_squared(DoubleDouble t, const NRange& r, double P0, std::int64_t cap) {
  if (r.count > cap) throw CapExceeded(r.count, cap);
  return decompose_w1_squared(RangeTable(r, P0), t, cap);
}

Wbar1ClosedForm wbar1_closed_form(double P0, double K) {
  if (!(K > 0)) throw std::invalid_argument("wbar1_closed_form: K must be positive");
  const Quad x = Quad(1) / K;
  Wbar1ClosedForm out;
  out.integral_value = static_cast<double>(x + 4 * expm1q(-x / 2) - expm1q(-x));
  out.main_term = static_cast<double>(x * x * x / 12);
  const RangeTable table(n_range(P0, K), P0);
  CompensatedSum acc;
  for (std::size_t i = 0; i < table.size(); ++i) {
    acc += table.alpha()[i] * table.alpha()[i] * table.inv_n()[i];
  }
  out.discrete_value = acc.value();
  return out;
}

}  // namespace gramsum
