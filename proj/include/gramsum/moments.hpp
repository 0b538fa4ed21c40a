#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "gramsum/gram.hpp"
#include "gramsum/kernels.hpp"
#include "gramsum/params.hpp"

namespace gramsum {

class EmptyIntervalError : public std::runtime_error {
 public:
  EmptyIntervalError() : std::runtime_error("empty Gram interval") {}
};

/// Empirical / predicted ratios. The *_err_scaled fields divide the
/// absolute deviation by the error scale K^-1 sqrt(T) ln^2 T (resp. K^-3 ...)
/// multiplied by u_eval / U, so subsampled runs stay comparable.
struct MomentRatios {
  double q0 = 0;                 // q0 / q0_predicted
  double sum_w_sq = 0;           // sum_w_sq / pred_sum_w_sq
  double sum_w1_sq = 0;
  double mean_value = 0;         // (sum_S_sq / q0) / (P0 / 2K)
  double sum_w_sq_err_scaled = 0;
  double sum_w1_sq_err_scaled = 0;
};

struct MomentReport {
  std::size_t q0 = 0;
  double q0_predicted = 0;
  double sum_w_sq = 0;
  double sum_w1_sq = 0;
  double sum_w_w1 = 0;
  double sum_S_sq = 0;
  std::size_t g_count = 0;  // points with |S| > threshold (strict)
  std::size_t q2 = 0;       // q0 - g_count
  double threshold = 0;     // (1/2) sqrt(P0 / K)
  double pred_sum_w_sq = 0;   // (1/4pi) u K^-1 ln(T/2pi)
  double pred_sum_w1_sq = 0;  // (1/48pi) u K^-3 ln(T/2pi)
  double pred_mean_value = 0; // P0 / 2K
  double theorem_denominator = 0;  // T^(1/6) K^-1 psi ln^2 T
  double max_abs_S = 0;
  double max_S_star_mag = 0;
  double max_split_residual = 0;  // max relative |w - S/sqrt(P0) - w1|
  double max_gram_residual = 0;
  MomentRatios ratios;
};

struct PointRecord {
  std::int64_t nu = 0;
  Quad t = 0;
  double S = 0, w = 0, w1 = 0, S_star_mag = 0;
};

struct MomentOptions {
  unsigned workers = 1;
  bool deterministic = true;
  bool keep_points = false;
  /// Points per accumulation chunk. Chunk partials are combined pairwise in
  /// index order, so results do not depend on the worker count.
  std::size_t chunk_size = 1024;
};

struct MomentRun {
  MomentReport report;
  NRange range;
  std::vector<PointRecord> points;  // filled when keep_points
};

/// Relative residual of w = S/sqrt(P0) + w1 at one point.
double split_residual(const PointSums& p, double P0);

/// Enumerates the Gram points in [T, T + params.u_eval] and accumulates the
/// second moments, the cross moment and the exceedance count.
/// Throws EmptyIntervalError when no point falls in the interval.
MomentRun moments_over_gram(const ExperimentParams& params, const MomentOptions& options = {});

/// Assembles a report from already-evaluated per-point values.
MomentReport make_report(const ExperimentParams& params, std::size_t q0, double sum_w_sq,
                         double sum_w1_sq, double sum_w_w1, double sum_S_sq,
                         std::size_t g_count);

struct NormalizedMoments {
  double m_w = 0;
  double m_w1 = 0;
  double m_cross = 0;
};

/// Q0-normalized moments. Throws EmptyIntervalError when q0 == 0.
NormalizedMoments normalized_moments(const MomentReport& report);

struct TheoremReport {
  std::size_t g = 0;
  double lower_scale = 0;   // T^(1/6) K^-1 psi ln^2 T
  double ratio = 0;         // g / lower_scale
  double count_shape = 0;   // q0 T^(-1/3) K^-1 / 12
  bool consistent = false;  // g > 0
};

TheoremReport theorem_report(const MomentReport& report, const ExperimentParams& params);

/// max |S| / (sqrt(P0) T^(1/6)). Throws std::invalid_argument on empty input.
double sup_bound_check(std::span<const double> abs_S, const ExperimentParams& params);

}  // namespace gramsum
