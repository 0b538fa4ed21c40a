#include "gramsum/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gramsum/compensated.hpp"
#include "gramsum/double_double.hpp"
#include "gramsum/parallel.hpp"

namespace gramsum {
namespace {

struct Partial {
  CompensatedSum w_sq, w1_sq, w_w1, S_sq;
  std::size_t g = 0;
  double max_abs_S = 0, max_S_star = 0, max_split = 0, max_gram = 0;

  void merge(const Partial& o) {
    w_sq += o.w_sq;
    w1_sq += o.w1_sq;
    w_w1 += o.w_w1;
    S_sq += o.S_sq;
    g += o.g;
    max_abs_S = std::max(max_abs_S, o.max_abs_S);
    max_S_star = std::max(max_S_star, o.max_S_star);
    max_split = std::max(max_split, o.max_split);
    max_gram = std::max(max_gram, o.max_gram);
  }
};

Partial combine(std::span<const Partial> parts) {
  if (parts.empty()) return {};
  if (parts.size() == 1) return parts.front();
  const std::size_t mid = parts.size() / 2;
  Partial left = combine(parts.first(mid));
  left.merge(combine(parts.subspan(mid)));
  return left;
}

double log_ratio(double T) { return std::log(T / (2 * std::numbers::pi)); }

}  // namespace

double split_residual(const PointSums& p, double P0) {
  const double s_scaled = p.S / std::sqrt(P0);
  const double scale = std::max({std::fabs(p.w), std::fabs(s_scaled), std::fabs(p.w1)});
  if (scale == 0) return 0;
  return std::fabs(p.w - s_scaled - p.w1) / scale;
}

MomentReport make_report(const ExperimentParams& params, std::size_t q0, double sum_w_sq,
                         double sum_w1_sq, double sum_w_w1, double sum_S_sq,
                         std::size_t g_count) {
  const double K = params.K;
  const double T = params.T;
  const double u = params.u_eval;
  const double lt = std::log(T);
  const double lr = log_ratio(T);

  MomentReport r;
  r.q0 = q0;
  r.q0_predicted = q0_predicted(params);
  r.sum_w_sq = sum_w_sq;
  r.sum_w1_sq = sum_w1_sq;
  r.sum_w_w1 = sum_w_w1;
  r.sum_S_sq = sum_S_sq;
  r.g_count = g_count;
  r.q2 = q0 - g_count;
  r.threshold = 0.5 * std::sqrt(params.P0 / K);
  r.pred_sum_w_sq = u * lr / (4 * std::numbers::pi * K);
  r.pred_sum_w1_sq = u * lr / (48 * std::numbers::pi * K * K * K);
  r.pred_mean_value = params.P0 / (2 * K);
  r.theorem_denominator = std::cbrt(std::sqrt(T)) / K * params.psi * lt * lt;

  const double u_fraction = params.U > 0 ? u / params.U : 0.0;
  const double err_a = std::sqrt(T) * lt * lt / K * u_fraction;
  const double err_b = err_a / (K * K);
  auto ratio = [](double num, double den) { return den != 0 ? num / den : 0.0; };
  r.ratios.q0 = ratio(static_cast<double>(q0), r.q0_predicted);
  r.ratios.sum_w_sq = ratio(sum_w_sq, r.pred_sum_w_sq);
  r.ratios.sum_w1_sq = ratio(sum_w1_sq, r.pred_sum_w1_sq);
  r.ratios.mean_value = q0 ? ratio(sum_S_sq / static_cast<double>(q0), r.pred_mean_value) : 0.0;
  r.ratios.sum_w_sq_err_scaled = ratio(std::fabs(sum_w_sq - r.pred_sum_w_sq), err_a);
  r.ratios.sum_w1_sq_err_scaled = ratio(std::fabs(sum_w1_sq - r.pred_sum_w1_sq), err_b);
  return r;
}

MomentRun moments_over_gram(const ExperimentParams& params, const MomentOptions& options) {
  const GramInterval gi = gram_range(params.T, params.u_eval, options.workers);
  if (gi.q0 == 0) throw EmptyIntervalError();

  MomentRun run;
  run.range = n_range(params.P0, params.K);
  const RangeTable table(run.range, params.P0);
  const double threshold = 0.5 * std::sqrt(params.P0 / params.K);
  if (options.keep_points) run.points.resize(gi.q0);

  const std::size_t chunk = std::max<std::size_t>(1, options.chunk_size);
  const std::size_t chunks = (gi.q0 + chunk - 1) / chunk;

  auto process = [&](std::size_t c, Partial& acc) {
    const std::size_t lo = c * chunk;
    const std::size_t hi = std::min(gi.q0, lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      const GramPoint& g = gi.points[i];
      const PointSums p = evaluate_point(table, to_double_double(g.t));
      acc.w_sq += p.w * p.w;
      acc.w1_sq += p.w1 * p.w1;
      acc.w_w1 += p.w * p.w1;
      acc.S_sq += p.S * p.S;
      if (std::fabs(p.S) > threshold) ++acc.g;
      acc.max_abs_S = std::max(acc.max_abs_S, std::fabs(p.S));
      acc.max_S_star = std::max(acc.max_S_star, p.S_star_mag);
      acc.max_split = std::max(acc.max_split, split_residual(p, params.P0));
      acc.max_gram = std::max(acc.max_gram, g.residual);
      if (options.keep_points) run.points[i] = {g.nu, g.t, p.S, p.w, p.w1, p.S_star_mag};
    }
  };

  Partial total;
  if (options.deterministic) {
    std::vector<Partial> parts(chunks);
    parallel_blocks(chunks, options.workers, [&](std::size_t c, unsigned) { process(c, parts[c]); });
    total = combine(parts);
  } else {
    // Per-worker accumulators; the combination order follows scheduling.
    std::vector<Partial> per_worker(std::max(1u, options.workers));
    parallel_blocks(chunks, options.workers,
                    [&](std::size_t c, unsigned w) { process(c, per_worker[w]); });
    for (const Partial& p : per_worker) total.merge(p);
  }

  run.report = make_report(params, gi.q0, total.w_sq.value(), total.w1_sq.value(),
                           total.w_w1.value(), total.S_sq.value(), total.g);
  run.report.max_abs_S = total.max_abs_S;
  run.report.max_S_star_mag = total.max_S_star;
  run.report.max_split_residual = total.max_split;
  run.report.max_gram_residual = total.max_gram;
  return run;
}

NormalizedMoments normalized_moments(const MomentReport& report) {
  if (report.q0 == 0) throw EmptyIntervalError();
  const double q = static_cast<double>(report.q0);
  return {report.sum_w_sq / q, report.sum_w1_sq / q, report.sum_w_w1 / q};
}

TheoremReport theorem_report(const MomentReport& report, const ExperimentParams& params) {
  TheoremReport tr;
  tr.g = report.g_count;
  const double lt = std::log(params.T);
  tr.lower_scale = std::cbrt(std::sqrt(params.T)) / params.K * params.psi * lt * lt;
  tr.ratio = tr.lower_scale > 0 ? static_cast<double>(tr.g) / tr.lower_scale : 0.0;
  tr.count_shape = static_cast<double>(report.q0) / std::cbrt(params.T) / params.K / 12.0;
  tr.consistent = tr.g > 0;
  return tr;
}

double sup_bound_check(std::span<const double> abs_S, const ExperimentParams& params) {
  if (abs_S.empty()) throw std::invalid_argument("sup_bound_check: no values");
  double m = 0;
  for (double v : abs_S) m = std::max(m, std::fabs(v));
  return m / (std::sqrt(params.P0) * std::cbrt(std::sqrt(params.T)));
}

}  // namespace gramsum
