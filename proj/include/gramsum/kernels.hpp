#pragma once

// Short trigonometric sums over the integers strictly between e^(-1/K) P0
// and P0, evaluated with double-double phases and compensated accumulation.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gramsum/double_double.hpp"

namespace gramsum {

/// Integers n with lo < n < hi (both ends open).
struct NRange {
  double lo = 0;  // e^(-1/K) P0
  double hi = 0;  // P0
  std::int64_t n_min = 1;
  std::int64_t n_max = 0;
  std::int64_t count = 0;
};

NRange n_range(double P0, double K);

/// Reduces t * ln_n modulo 2pi into [0, 2pi). The product is formed exactly
/// as a double-double, and 2pi is carried to ~160 bits, so the phase error
/// stays below 1e-12 rad for t <= 1e10, ln_n <= 20.
double phase_reduce(double t, double ln_n);
double phase_reduce(DoubleDouble t, DoubleDouble ln_n);
/// Reduces a non-negative double-double phase.
double reduce_two_pi(DoubleDouble x);

inline constexpr std::int64_t kDefaultPairCap = 10000;

class CapExceeded : public std::length_error {
 public:
  CapExceeded(std::int64_t count, std::int64_t cap);
};

/// Per-n tables for one range: ln n to ~106 bits and the weights 1/sqrt(n),
/// 1/n, alpha(n) = 1 - sqrt(n/P0) and alpha(n)/sqrt(n).
class RangeTable {
 public:
  RangeTable(const NRange& range, double P0);

  const NRange& range() const { return range_; }
  double p0() const { return p0_; }
  std::size_t size() const { return log_n_.size(); }

  const std::vector<DoubleDouble>& log_n() const { return log_n_; }
  const std::vector<double>& inv_sqrt_n() const { return inv_sqrt_n_; }
  const std::vector<double>& inv_n() const { return inv_n_; }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& w1_weight() const { return w1_weight_; }

 private:
  NRange range_;
  double p0_;
  std::vector<DoubleDouble> log_n_;
  std::vector<double> inv_sqrt_n_;
  std::vector<double> inv_n_;
  std::vector<double> alpha_;
  std::vector<double> w1_weight_;
};

/// The four single sums needed at every Gram point.
struct PointSums {
  double S = 0;
  double S_star_mag = 0;
  double w = 0;
  double w1 = 0;
};

PointSums evaluate_point(const RangeTable& table, DoubleDouble t);

struct SumValues {
  double S = 0;
  double S_star_mag = 0;
  double w = 0;
  double w1 = 0;
  std::optional<double> w2;  // absent when the pair sums were skipped
  std::optional<double> w3;
  double diag_cos = 0;  // sum (1/n) cos(2 t ln n), no factor 1/2
  double harmonic = 0;  // sum 1/n
};

/// All sums at t. Pair sums are included when with_pairs is set; that throws
/// CapExceeded if the range is longer than `cap`.
SumValues evaluate_sums(const RangeTable& table, DoubleDouble t, bool with_pairs,
                        std::int64_t cap = kDefaultPairCap);

// Single-sum entry points. Each builds a RangeTable.
double sum_S(DoubleDouble t, const NRange& r);
double sum_S_star_mag(DoubleDouble t, const NRange& r);
double sum_w(DoubleDouble t, const NRange& r);
double sum_w1(DoubleDouble t, const NRange& r, double P0);
double diag_cos(DoubleDouble t, const NRange& r);
double harmonic_sum(const NRange& r);

/// sum_{m<n} a_m a_n cos(t ln(n/m)) and sum_{m<n} a_m a_n cos(t ln(mn)).
struct PairSums {
  double difference = 0;
  double sum = 0;
};

/// Ordered-pair double sums with weights a_n. Quadratic in the range length.
PairSums pair_sums(const RangeTable& table, DoubleDouble t, const std::vector<double>& weights,
                   std::int64_t cap = kDefaultPairCap);

double double_sum_w2(DoubleDouble t, const NRange& r, std::int64_t cap = kDefaultPairCap);
double double_sum_w3(DoubleDouble t, const NRange& r, std::int64_t cap = kDefaultPairCap);

/// w^2 = (1/2) harmonic + w2 + w3 + (1/2) diag_cos, exactly.
struct WSquaredParts {
  double w_sq = 0;
  double half_harmonic = 0;
  double w2 = 0;
  double w3 = 0;
  double half_diag = 0;
  double residual = 0;  // w_sq - (half_harmonic + w2 + w3 + half_diag)
};

/// w1^2 = (1/2) wbar1 + wbar2 + wbar3 + (1/2) wbar4 with alpha weights:
///   wbar1 = sum alpha^2/n, wbar4 = sum (alpha^2/n) cos(2 t ln n),
///   wbar2, wbar3 = pair sums with weights alpha(n)/sqrt(n).
struct W1SquaredParts {
  double w1_sq = 0;
  double half_wbar1 = 0;
  double wbar2 = 0;
  double wbar3 = 0;
  double half_wbar4 = 0;
  double residual = 0;
};

WSquaredParts decompose_w_squared(const RangeTable& table, DoubleDouble t,
                                  std::int64_t cap = kDefaultPairCap);
WSquaredParts decompose_w_squared(DoubleDouble t, const NRange& r,
                                  std::int64_t cap = kDefaultPairCap);
W1SquaredParts decompose_w1_squared(const RangeTable& table, DoubleDouble t,
                                    std::int64_t cap = kDefaultPairCap);
W1SquaredParts decompose_w1_squared(DoubleDouble t, const NRange& r, double P0,
                                    std::int64_t cap = kDefaultPairCap);

/// Exact integral of alpha^2(x)/x over (e^(-1/K) P0, P0),
///   1/K - 4(1 - e^(-1/(2K))) + 1 - e^(-1/K),
/// its leading term 1/(12 K^3), and the discrete sum of alpha^2/n over
/// n_range(P0, K) for comparison.
struct Wbar1ClosedForm {
  double integral_value = 0;
  double main_term = 0;
  double discrete_value = 0;
};

Wbar1ClosedForm wbar1_closed_form(double P0, double K);

}  // namespace gramsum
