#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gramsum/moments.hpp"

using namespace gramsum;

namespace {
ExperimentParams small_params(double u_cap) {
  return validate_params(1e5, parse_psi("loglog"), {}, false, u_cap);
}
}  // namespace

TEST_CASE("moments over a short window agree with a direct loop") {
  const ExperimentParams p = small_params(300);
  MomentOptions opt;
  opt.keep_points = true;
  const MomentRun run = moments_over_gram(p, opt);
  REQUIRE(run.report.q0 > 0);
  REQUIRE(run.points.size() == run.report.q0);

  const RangeTable table(run.range, p.P0);
  double s_sq = 0, w_sq = 0, w1_sq = 0, cross = 0, max_s = 0;
  std::size_t g = 0;
  for (const PointRecord& pr : run.points) {
    const PointSums ps = evaluate_point(table, to_double_double(pr.t));
    CHECK(ps.S == pr.S);
    s_sq += ps.S * ps.S;
    w_sq += ps.w * ps.w;
    w1_sq += ps.w1 * ps.w1;
    cross += ps.w * ps.w1;
    max_s = std::max(max_s, std::fabs(ps.S));
    if (std::fabs(ps.S) > run.report.threshold) ++g;
  }
  const MomentReport& r = run.report;
  CHECK(r.sum_S_sq == doctest::Approx(s_sq).epsilon(1e-12));
  CHECK(r.sum_w_sq == doctest::Approx(w_sq).epsilon(1e-12));
  CHECK(r.sum_w1_sq == doctest::Approx(w1_sq).epsilon(1e-12));
  CHECK(r.sum_w_w1 == doctest::Approx(cross).epsilon(1e-12));
  CHECK(r.max_abs_S == max_s);
  CHECK(r.g_count == g);
  CHECK(r.q2 == r.q0 - r.g_count);
  CHECK(r.threshold == doctest::Approx(0.5 * std::sqrt(p.P0 / p.K)));
  CHECK(r.max_gram_residual <= 1e-9);
  CHECK(r.max_split_residual <= 1e-10);
}

TEST_CASE("worker count and chunking do not change the report") {
  const ExperimentParams p = small_params(2000);
  MomentOptions a;
  MomentOptions b;
  b.workers = 3;
  const MomentRun ra = moments_over_gram(p, a);
  const MomentRun rb = moments_over_gram(p, b);
  CHECK(ra.report.sum_S_sq == rb.report.sum_S_sq);
  CHECK(ra.report.sum_w_sq == rb.report.sum_w_sq);
  CHECK(ra.report.sum_w1_sq == rb.report.sum_w1_sq);
  CHECK(ra.report.g_count == rb.report.g_count);
}

TEST_CASE("predictions in the report") {
  const ExperimentParams p = small_params(500);
  const MomentReport r = make_report(p, 100, 2.0, 0.1, 0.3, 4000, 7);
  const double L = std::log(p.T / (2 * std::numbers::pi));
  CHECK(r.pred_sum_w_sq == doctest::Approx(p.u_eval * L / (4 * std::numbers::pi * p.K)));
  CHECK(r.pred_sum_w1_sq ==
        doctest::Approx(p.u_eval * L / (48 * std::numbers::pi * p.K * p.K * p.K)));
  CHECK(r.pred_mean_value == doctest::Approx(p.P0 / (2 * p.K)));
  CHECK(r.ratios.mean_value == doctest::Approx((4000.0 / 100) / r.pred_mean_value));
  CHECK(r.q2 == 93);
  const NormalizedMoments m = normalized_moments(r);
  CHECK(m.m_w == doctest::Approx(0.02));
  CHECK(m.m_cross == doctest::Approx(0.003));
}

TEST_CASE("empty intervals") {
  const ExperimentParams p = small_params(0.01);
  const MomentReport r = make_report(p, 0, 0, 0, 0, 0, 0);
  CHECK_THROWS_AS(normalized_moments(r), EmptyIntervalError);
  CHECK_THROWS_AS(sup_bound_check(std::vector<double>{}, p), std::invalid_argument);
}

TEST_CASE("theorem report") {
  const ExperimentParams p = validate_params(1e6, parse_psi("loglog"));
  const MomentReport r = make_report(p, 1000, 1, 1, 0, 1, 5);
  const TheoremReport th = theorem_report(r, p);
  const double lt = std::log(p.T);
  CHECK(th.lower_scale == doctest::Approx(std::pow(p.T, 1.0 / 6) / p.K * p.psi * lt * lt));
  CHECK(th.ratio == doctest::Approx(5 / th.lower_scale));
  CHECK(th.consistent);
  CHECK_FALSE(theorem_report(make_report(p, 1000, 1, 1, 0, 1, 0), p).consistent);
}

TEST_CASE("split residual") {
  PointSums ps;
  ps.S = 2.0;
  ps.w1 = 0.5;
  ps.w = 0.5 + 2.0 / 10.0;
  CHECK(split_residual(ps, 100.0) <= 1e-15);
}
