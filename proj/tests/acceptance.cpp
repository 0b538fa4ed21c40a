// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Tolerances are fixed here and must not be loosened to make a run pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gramsum/experiment.hpp"
#include "gramsum/gram.hpp"
#include "gramsum/kernels.hpp"
#include "gramsum/report.hpp"
#include "gramsum/theta.hpp"

using namespace gramsum;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s  [%2d] %-32s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), seconds_since(t0));
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Gram enumerations shared by criteria 2 and 3.
std::vector<GramInterval> enumerations;

bool check_interval(const GramInterval& gi, double& worst_res, double& worst_spacing,
                    std::string& why) {
  for (std::size_t i = 0; i < gi.points.size(); ++i) {
    const GramPoint& g = gi.points[i];
    worst_res = std::max(worst_res, g.residual);
    if (!(g.residual <= 1e-9)) {
      why = fmt("residual %.3g at nu=%lld", g.residual, static_cast<long long>(g.nu));
      return false;
    }
    if (i == 0) continue;
    if (g.nu != gi.points[i - 1].nu + 1) {
      why = fmt("index gap at nu=%lld", static_cast<long long>(g.nu));
      return false;
    }
    const double t = static_cast<double>(g.t);
    if (t >= 1e4) {
      const double gap = static_cast<double>(g.t - gi.points[i - 1].t);
      const double dev = std::fabs(gap * std::log(t / (2 * std::numbers::pi)) /
                                       (2 * std::numbers::pi) -
                                   1);
      worst_spacing = std::max(worst_spacing, dev);
      if (dev > 0.1) {
        why = fmt("spacing off by %.3g at nu=%lld", dev, static_cast<long long>(g.nu));
        return false;
      }
    }
  }
  return true;
}

std::string golden(const std::string& name) {
  std::ifstream f(std::string(GRAMSUM_GOLDEN_DIR) + "/" + name, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  report(1, "theta oracle agreement", [] {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> ex(2.0, 9.0), lin(100.0, 1e9);
    double worst = 0;
    const auto t0 = Clock::now();
    for (int i = 0; i < 1000; ++i) {
      // Half log-uniform so small t is covered, half uniform on the interval.
      const Quad t = (i % 2 == 0) ? powq(10.0Q, ex(rng)) : static_cast<Quad>(lin(rng));
      const double err =
          static_cast<double>(qabs(theta_asymptotic(t).value - theta_oracle(t, 34)));
      worst = std::max(worst, err);
    }
    const double secs = seconds_since(t0);
    return Outcome{worst <= 1e-10 && secs <= 60, fmt("max |err| = %.3g, %.1fs", worst, secs)};
  });

  // Criterion 3 runs first so its enumerations feed criterion 2.
  Outcome c3;
  {
    const auto t0 = Clock::now();
    try {
      std::string detail;
      bool ok = true;
      for (const double T : {1e6, 1e7}) {
        const ExperimentParams p = validate_params(T, PsiSpec{});
        GramInterval gi = gram_range(T, p.U);
        const double pred = q0_predicted(T, p.U);
        const double dev = std::fabs(static_cast<double>(gi.q0) - pred);
        const double bound = 10 * (p.U * p.U / T + 1);
        ok = ok && dev <= bound;
        detail += fmt("T=%.0e Q0=%zu pred=%.1f |d|=%.1f<=%.0f; ", T, gi.q0, pred, dev, bound);
        enumerations.push_back(std::move(gi));
      }
      const double secs = seconds_since(t0);
      c3 = {ok && secs <= 300, detail + fmt("%.1fs", secs)};
    } catch (const std::exception& e) {
      c3 = {false, std::string("exception: ") + e.what()};
    }
  }

  report(2, "Gram residuals and spacing", [] {
    enumerations.push_back(gram_range(1e4, 2000));
    enumerations.push_back(gram_range(1e9, 2000));
    enumerations.push_back(gram_range(100, 500));
    double worst_res = 0, worst_spacing = 0;
    std::size_t n = 0;
    std::string why;
    for (const GramInterval& gi : enumerations) {
      n += gi.points.size();
      if (!check_interval(gi, worst_res, worst_spacing, why)) return Outcome{false, why};
    }
    // Independent recheck of a sample against the MPFR oracle.
    double worst_oracle = 0;
    for (const GramInterval& gi : enumerations) {
      for (std::size_t i = 0; i < gi.points.size(); i += 997) {
        const GramPoint& g = gi.points[i];
        const Quad r = theta_oracle(g.t, 34) - kQuadPi * static_cast<Quad>(g.nu);
        worst_oracle = std::max(worst_oracle, static_cast<double>(qabs(r)));
      }
    }
    return Outcome{worst_oracle <= 1e-9,
                   fmt("%zu points, max residual %.3g (oracle %.3g), max spacing dev %.3g", n,
                       worst_res, worst_oracle, worst_spacing)};
  });

  report(3, "Gram count vs main term", [&] { return c3; });

  report(4, "exact identities", [] {
    IdentitySuiteOptions opt;
    opt.cap = 10000;
    opt.oracle_trials = 0;
    const auto t0 = Clock::now();
    const IdentitySummary s = identity_suite(4004, 1000, opt);
    const double secs = seconds_since(t0);
    const auto& a = s.at("split_identity");
    const auto& b = s.at("w_squared_decomposition");
    const auto& c = s.at("w1_squared_decomposition");
    const bool ok = a.max_residual <= 1e-10 && b.max_residual <= 1e-9 &&
                    c.max_residual <= 1e-9 && a.trials == 1000 && secs <= 120;
    return Outcome{ok, fmt("split %.3g, w^2 %.3g, w1^2 %.3g over %zu trials, %.1fs",
                           a.max_residual, b.max_residual, c.max_residual, a.trials, secs)};
  });

  report(5, "kernel oracle equivalence", [] {
    IdentitySuiteOptions opt;
    opt.oracle_trials = 100;
    opt.oracle_max_count = 1000;
    const IdentitySummary s = identity_suite(5005, 1, opt);
    bool ok = true;
    std::string detail;
    for (const char* name :
         {"oracle_S", "oracle_w", "oracle_w1", "oracle_w2", "oracle_w3", "oracle_diag_cos"}) {
      const auto& v = s.at(name);
      ok = ok && v.max_residual <= 1e-9 && v.trials == 100;
      detail += fmt("%s %.2g ", name + 7, v.max_residual);
    }
    return Outcome{ok, detail};
  });

  report(6, "alpha-squared closed form", [] {
    bool ok = true;
    std::string detail;
    for (const double K : {5.0, 10.0, 50.0, 100.0}) {
      const Wbar1ClosedForm c = wbar1_closed_form(1e4, K);
      const double shape = std::fabs(c.integral_value - 1 / (12 * K * K * K)) * K * K * K * K;
      const double disc = std::fabs(0.5 * c.discrete_value - 0.5 * c.integral_value);
      ok = ok && shape <= 1 && disc <= 5 / 1e4;
      detail += fmt("K=%g: %.3g/%.2g; ", K, shape, disc);
    }
    return Outcome{ok, detail};
  });

  SweepResult sweep;
  std::string sweep_error;
  {
    ExperimentConfig cfg;
    cfg.max_points = 200000;
    try {
      sweep = run_sweep({1e6, 1e7, 1e8}, cfg);
    } catch (const std::exception& e) {
      sweep_error = e.what();
    }
  }
  auto sweep_rows_ok = [&](std::string& why) {
    if (!sweep_error.empty()) {
      why = "sweep failed: " + sweep_error;
      return false;
    }
    for (const SweepRow& r : sweep.rows) {
      if (!r.result) {
        why = fmt("T=%.0e: %s", r.T, r.status.c_str());
        return false;
      }
    }
    return sweep.rows.size() == 3;
  };

  report(7, "mean-value trend", [&] {
    std::string why;
    if (!sweep_rows_ok(why)) return Outcome{false, why};
    bool ok = true;
    std::string detail;
    for (const SweepRow& r : sweep.rows) {
      const double ratio = r.result->run.report.ratios.mean_value;
      ok = ok && ratio >= 0.5 && ratio <= 2.0;
      detail += fmt("T=%.0e ratio=%.4f (Q0=%zu); ", r.T, ratio, r.result->run.report.q0);
    }
    const double d0 = std::fabs(sweep.rows.front().result->run.report.ratios.mean_value - 1);
    const double d2 = std::fabs(sweep.rows.back().result->run.report.ratios.mean_value - 1);
    ok = ok && d2 <= d0;
    return Outcome{ok, detail + fmt("|r-1|: %.4f -> %.4f", d0, d2)};
  });

  report(8, "second-moment error shape", [&] {
    std::string why;
    if (!sweep_rows_ok(why)) return Outcome{false, why};
    bool ok = true;
    std::string detail;
    for (const SweepRow& r : sweep.rows) {
      const MomentRatios& m = r.result->run.report.ratios;
      ok = ok && m.sum_w_sq_err_scaled <= 10 && m.sum_w1_sq_err_scaled <= 10;
      detail += fmt("T=%.0e w:%.3g w1:%.3g; ", r.T, m.sum_w_sq_err_scaled, m.sum_w1_sq_err_scaled);
    }
    return Outcome{ok, detail};
  });

  report(9, "large-value count sanity", [&] {
    std::string why;
    if (!sweep_rows_ok(why)) return Outcome{false, why};
    bool ok = true;
    std::string detail;
    for (const SweepRow& r : sweep.rows) {
      const TheoremReport& th = r.result->theorem;
      ok = ok && th.g >= 1 && th.ratio > 0;
      detail += fmt("T=%.0e g=%zu ratio=%.3g; ", r.T, th.g, th.ratio);
    }
    return Outcome{ok, detail};
  });

  report(10, "determinism and golden files", [] {
    ExperimentConfig cfg;
    cfg.T = 1e4;
    cfg.u_cap = 150;
    cfg.keep_points = true;
    ExperimentConfig cfg4 = cfg;
    cfg4.workers = 4;
    auto text = [](const ExperimentResult& r) {
      std::ostringstream csv;
      write_points_csv(csv, r.run.points);
      return std::pair{without_run_info(to_json(r)).dump(2) + "\n", csv.str()};
    };
    const auto a = text(run_experiment(cfg));
    const auto b = text(run_experiment(cfg));
    const auto c = text(run_experiment(cfg4));
    const bool same = a == b && a == c;
    const bool gold = a.first == golden("experiment_T1e4.json") &&
                      a.second == golden("points_T1e4.csv");

    ExperimentConfig sc;
    sc.max_points = 300;
    std::ostringstream s1, s2;
    write_sweep_csv(s1, run_sweep({1e5, 1e4}, sc));
    sc.workers = 3;
    write_sweep_csv(s2, run_sweep({1e4, 1e5}, sc));
    const bool sweep_same = s1.str() == s2.str() && s1.str() == golden("sweep_T1e4_1e5.csv");
    return Outcome{same && gold && sweep_same,
                   fmt("repeat/workers identical: %s, golden match: %s, sweep golden: %s",
                       same ? "yes" : "no", gold ? "yes" : "no", sweep_same ? "yes" : "no")};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
