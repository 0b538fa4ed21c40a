#include "gramsum/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <random>
#include <stdexcept>

#include "gramsum/kernels.hpp"
#include "gramsum/parallel.hpp"
#include "gramsum/reference.hpp"
#include "gramsum/theta.hpp"

namespace gramsum {
namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CheckVerdict check(std::string name, CheckKind kind, double value, double lower, double upper) {
  return {std::move(name), kind, value, lower, upper, value >= lower && value <= upper};
}

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<CheckVerdict> grade(const MomentReport& r, const SoftTolerances& soft) {
  std::vector<CheckVerdict> out;
  out.push_back(check("gram_residual", CheckKind::kHard, r.max_gram_residual, 0, 1e-9));
  out.push_back(check("split_identity", CheckKind::kHard, r.max_split_residual, 0, 1e-10));
  const double schwarz_den = r.sum_w_sq * r.sum_w1_sq;
  const double schwarz = schwarz_den > 0 ? r.sum_w_w1 * r.sum_w_w1 / schwarz_den : 0.0;
  out.push_back(check("schwarz", CheckKind::kHard, schwarz, 0,
                      1 + 8 * std::numeric_limits<double>::epsilon()));
  const bool counts = r.g_count <= r.q0 && r.q2 == r.q0 - r.g_count;
  out.push_back(check("count_consistency", CheckKind::kHard, counts ? 1 : 0, 1, 1));

  out.push_back(check("mean_value_ratio", CheckKind::kSoft, r.ratios.mean_value,
                      soft.mean_ratio_lo, soft.mean_ratio_hi));
  out.push_back(check("sum_w_sq_error_shape", CheckKind::kSoft, r.ratios.sum_w_sq_err_scaled, 0,
                      soft.err_shape_max));
  out.push_back(check("sum_w1_sq_error_shape", CheckKind::kSoft, r.ratios.sum_w1_sq_err_scaled, 0,
                      soft.err_shape_max));
  out.push_back(check("omega_count_positive", CheckKind::kSoft,
                      static_cast<double>(r.g_count), 1, kInf));
  return out;
}

}  // namespace

bool ExperimentResult::hard_ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckVerdict& c) { return c.kind != CheckKind::kHard || c.pass; });
}

bool ExperimentResult::soft_ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckVerdict& c) { return c.kind != CheckKind::kSoft || c.pass; });
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.config = config;
  res.generated_at = utc_now();
  res.params = validate_params(config.T, config.psi, config.K, config.relaxed, config.u_cap);
  if (config.relaxed) res.warnings.emplace_back("relaxed mode: parameter regime not enforced");

  if (config.max_points && res.params.T >= kThetaAsymptoticFloor) {
    const std::size_t n = *config.max_points;
    if (n == 0) throw EmptyIntervalError();
    const std::int64_t first = first_gram_index(res.params.T);
    const Quad next = gram_point(first + static_cast<std::int64_t>(n)).t;
    const Quad end = static_cast<Quad>(res.params.T) + res.params.u_eval;
    if (next <= end) {
      const Quad last = gram_point(first + static_cast<std::int64_t>(n) - 1).t;
      res.params.u_eval = static_cast<double>((last + next) / 2 - res.params.T);
      res.warnings.emplace_back("interval capped to " + std::to_string(n) + " Gram points");
    }
  }

  MomentOptions opts;
  opts.workers = config.workers;
  opts.deterministic = config.deterministic;
  opts.keep_points = config.keep_points;
  res.run = moments_over_gram(res.params, opts);
  res.normalized = normalized_moments(res.run.report);
  res.theorem = theorem_report(res.run.report, res.params);
  const double max_abs = res.run.report.max_abs_S;
  res.sup_bound_ratio = sup_bound_check(std::span<const double>(&max_abs, 1), res.params);
  res.checks = grade(res.run.report, config.soft);
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

int exit_status(const ExperimentResult& result) {
  if (!result.hard_ok()) return kExitRuntime;
  if (!result.soft_ok()) return kExitSoftDeviation;
  return kExitOk;
}

SweepResult run_sweep(std::vector<double> Ts, const ExperimentConfig& shared) {
  if (Ts.size() < 2) throw std::invalid_argument("sweep requires >= 2 points");
  std::sort(Ts.begin(), Ts.end());
  SweepResult sweep;
  for (double T : Ts) {
    SweepRow row;
    row.T = T;
    ExperimentConfig cfg = shared;
    cfg.T = T;
    try {
      row.result = run_experiment(cfg);
      row.status = "ok";
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    sweep.rows.push_back(std::move(row));
  }

  const SweepRow* first = nullptr;
  const SweepRow* last = nullptr;
  for (const SweepRow& r : sweep.rows) {
    if (!r.result) continue;
    if (!first) first = &r;
    last = &r;
  }
  if (first && last && first != last) {
    sweep.first_deviation = std::fabs(first->result->run.report.ratios.mean_value - 1);
    sweep.last_deviation = std::fabs(last->result->run.report.ratios.mean_value - 1);
    sweep.trend_ok = sweep.last_deviation <= sweep.first_deviation;
  }
  return sweep;
}

int exit_status(const SweepResult& sweep) {
  bool soft = sweep.trend_ok;
  for (const SweepRow& r : sweep.rows) {
    if (!r.result) return kExitRuntime;
    if (!r.result->hard_ok()) return kExitRuntime;
    soft = soft && r.result->soft_ok();
  }
  return soft ? kExitOk : kExitSoftDeviation;
}

// ---------------------------------------------------------------------------
// Identity suite

namespace {

struct Trial {
  double t = 0, P0 = 0, K = 0;
};

struct TrialResult {
  double split = 0, w_sq = 0, w1_sq = 0, alpha = 0, count = 0, harmonic = 0;
};

struct OracleResult {
  double S = 0, S_star = 0, w = 0, w1 = 0, w2 = 0, w3 = 0, diag = 0, harmonic = 0;
};

double log_uniform(std::mt19937_64& rng, double lo_exp, double hi_exp) {
  return std::pow(10.0, std::uniform_real_distribution<double>(lo_exp, hi_exp)(rng));
}

Trial draw(std::mt19937_64& rng, std::int64_t max_count, double p0_exp_hi) {
  for (;;) {
    Trial tr;
    tr.t = log_uniform(rng, 2, 9);
    tr.P0 = log_uniform(rng, 1, p0_exp_hi);
    tr.K = log_uniform(rng, 0, 2);
    if (n_range(tr.P0, tr.K).count <= max_count) return tr;
  }
}

Trial draw_empty(std::mt19937_64& rng) {
  Trial tr;
  tr.t = log_uniform(rng, 2, 9);
  tr.P0 = static_cast<double>(std::uniform_int_distribution<int>(10, 4000)(rng)) + 0.5;
  tr.K = 1e4;  // lo > floor(P0), so (lo, P0) holds no integer
  return tr;
}

TrialResult run_trial(const Trial& tr, std::int64_t cap) {
  TrialResult out;
  const NRange r = n_range(tr.P0, tr.K);
  const RangeTable table(r, tr.P0);
  const PointSums p = evaluate_point(table, tr.t);
  out.split = split_residual(p, tr.P0);

  const WSquaredParts ws = decompose_w_squared(table, tr.t, cap);
  out.w_sq = std::fabs(ws.residual) / std::max(1.0, ws.w_sq);
  const W1SquaredParts w1s = decompose_w1_squared(table, tr.t, cap);
  out.w1_sq = std::fabs(w1s.residual) / std::max(1.0, w1s.w1_sq);

  // alpha in (0, 1/K): report max(alpha K) and flag non-positive alpha as 2.
  for (double a : table.alpha()) {
    out.alpha = std::max(out.alpha, a > 0 ? a * tr.K : 2.0);
  }
  out.count = std::fabs(static_cast<double>(r.count) + tr.P0 * std::expm1(-1.0 / tr.K));
  // Relative deviation of the harmonic sum from 1/K, in units of 4K/P0.
  const double h = harmonic_sum(r);
  out.harmonic = std::fabs(h * tr.K - 1) / (4 * tr.K / tr.P0);
  return out;
}

OracleResult run_oracle(const Trial& tr, std::int64_t cap) {
  const NRange r = n_range(tr.P0, tr.K);
  const RangeTable table(r, tr.P0);
  const SumValues v = evaluate_sums(table, tr.t, true, cap);
  const reference::ReferenceSums ref =
      reference::brute_force(static_cast<Quad>(tr.t), r.n_min, r.n_max, tr.P0, true);
  auto d = [](double x, Quad q) { return static_cast<double>(qabs(static_cast<Quad>(x) - q)); };
  OracleResult o;
  o.S = d(v.S, ref.S);
  o.S_star = d(v.S_star_mag, ref.S_star_mag);
  o.w = d(v.w, ref.w);
  o.w1 = d(v.w1, ref.w1);
  o.w2 = d(*v.w2, ref.w2);
  o.w3 = d(*v.w3, ref.w3);
  o.diag = d(v.diag_cos, ref.diag_cos);
  o.harmonic = d(v.harmonic, ref.harmonic);
  return o;
}

}  // namespace

bool IdentitySummary::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.pass; });
}

const IdentityVerdict& IdentitySummary::at(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return v;
  }
  throw std::out_of_range("no verdict named " + name);
}

IdentitySummary identity_suite(std::uint64_t seed, std::size_t trials,
                               const IdentitySuiteOptions& options) {
  if (trials < 1) throw std::invalid_argument("identity_suite: trials must be >= 1");
  std::mt19937_64 rng(seed);

  std::vector<Trial> inputs(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    const bool empty = options.empty_every && i % options.empty_every == options.empty_every - 1;
    inputs[i] = empty ? draw_empty(rng) : draw(rng, options.cap, 5);
  }
  std::vector<Trial> oracle_inputs(options.oracle_trials);
  for (auto& tr : oracle_inputs) tr = draw(rng, options.oracle_max_count, 4);

  std::vector<TrialResult> results(trials);
  parallel_blocks(trials, options.workers,
                  [&](std::size_t i, unsigned) { results[i] = run_trial(inputs[i], options.cap); });
  std::vector<OracleResult> oracle(oracle_inputs.size());
  parallel_blocks(oracle.size(), options.workers, [&](std::size_t i, unsigned) {
    oracle[i] = run_oracle(oracle_inputs[i], options.cap);
  });

  IdentitySummary s;
  s.seed = seed;
  s.trials = trials;
  auto add = [&](std::string name, std::size_t n, double tol, auto pick, const auto& rows,
                 bool strict) {
    double m = 0;
    for (const auto& r : rows) m = std::max(m, pick(r));
    s.verdicts.push_back({std::move(name), n, m, tol, strict ? m < tol : m <= tol});
  };
  add("split_identity", trials, 1e-10, [](const TrialResult& r) { return r.split; }, results, false);
  add("w_squared_decomposition", trials, 1e-9, [](const TrialResult& r) { return r.w_sq; }, results, false);
  add("w1_squared_decomposition", trials, 1e-9, [](const TrialResult& r) { return r.w1_sq; }, results, false);
  add("alpha_bounds", trials, 1.0, [](const TrialResult& r) { return r.alpha; }, results, true);
  add("range_count", trials, 1.0, [](const TrialResult& r) { return r.count; }, results, false);
  add("harmonic_vs_inverse_K", trials, 1.0, [](const TrialResult& r) { return r.harmonic; }, results, false);

  const std::size_t no = oracle.size();
  if (no > 0) {
    add("oracle_S", no, 1e-9, [](const OracleResult& r) { return r.S; }, oracle, false);
    add("oracle_S_star_mag", no, 1e-9, [](const OracleResult& r) { return r.S_star; }, oracle, false);
    add("oracle_w", no, 1e-9, [](const OracleResult& r) { return r.w; }, oracle, false);
    add("oracle_w1", no, 1e-9, [](const OracleResult& r) { return r.w1; }, oracle, false);
    add("oracle_w2", no, 1e-9, [](const OracleResult& r) { return r.w2; }, oracle, false);
    add("oracle_w3", no, 1e-9, [](const OracleResult& r) { return r.w3; }, oracle, false);
    add("oracle_diag_cos", no, 1e-9, [](const OracleResult& r) { return r.diag; }, oracle, false);
    add("oracle_harmonic", no, 1e-9, [](const OracleResult& r) { return r.harmonic; }, oracle, false);
  }
  return s;
}

}  // namespace gramsum
