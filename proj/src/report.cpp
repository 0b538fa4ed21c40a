#include "gramsum/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace gramsum {

using ojson = nlohmann::ordered_json;

namespace {

// Non-finite values have no JSON representation.
ojson num(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

std::string_view kind_name(CheckKind k) { return k == CheckKind::kHard ? "hard" : "soft"; }

constexpr std::array<const char*, 33> kSweepColumns = {
    "T", "psi", "K", "U", "u_eval", "P0", "n_count",
    "q0", "q0_predicted", "q0_ratio",
    "sum_S_sq", "mean_value_ratio",
    "m_w", "m_w1", "m_cross", "m_w_times_2K", "m_w1_times_24K3",
    "sum_w_sq", "pred_sum_w_sq", "sum_w_sq_err_scaled",
    "sum_w1_sq", "pred_sum_w1_sq", "sum_w1_sq_err_scaled",
    "g_count", "q2", "threshold", "lower_scale", "theorem_ratio", "count_shape",
    "sup_bound_ratio", "max_abs_S", "max_S_star_mag", "status"};

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ojson to_json(const ExperimentParams& p) {
  ojson j;
  j["T"] = num(p.T);
  j["psi"] = num(p.psi);
  j["psi_kind"] = std::string(to_string(p.psi_kind));
  j["K"] = num(p.K);
  j["U"] = num(p.U);
  j["u_eval"] = num(p.u_eval);
  j["P0"] = num(p.P0);
  j["relaxed"] = p.relaxed;
  return j;
}

ojson to_json(const NRange& r) {
  ojson j;
  j["lo"] = num(r.lo);
  j["hi"] = num(r.hi);
  j["n_min"] = r.n_min;
  j["n_max"] = r.n_max;
  j["count"] = r.count;
  return j;
}

ojson to_json(const MomentReport& r) {
  ojson j;
  j["q0"] = r.q0;
  j["q0_predicted"] = num(r.q0_predicted);
  j["sum_w_sq"] = num(r.sum_w_sq);
  j["sum_w1_sq"] = num(r.sum_w1_sq);
  j["sum_w_w1"] = num(r.sum_w_w1);
  j["sum_S_sq"] = num(r.sum_S_sq);
  j["g_count"] = r.g_count;
  j["q2"] = r.q2;
  j["threshold"] = num(r.threshold);
  j["pred_sum_w_sq"] = num(r.pred_sum_w_sq);
  j["pred_sum_w1_sq"] = num(r.pred_sum_w1_sq);
  j["pred_mean_value"] = num(r.pred_mean_value);
  j["theorem_denominator"] = num(r.theorem_denominator);
  j["max_abs_S"] = num(r.max_abs_S);
  j["max_S_star_mag"] = num(r.max_S_star_mag);
  j["max_split_residual"] = num(r.max_split_residual);
  j["max_gram_residual"] = num(r.max_gram_residual);
  ojson ratios;
  ratios["q0"] = num(r.ratios.q0);
  ratios["sum_w_sq"] = num(r.ratios.sum_w_sq);
  ratios["sum_w1_sq"] = num(r.ratios.sum_w1_sq);
  ratios["mean_value"] = num(r.ratios.mean_value);
  ratios["sum_w_sq_err_scaled"] = num(r.ratios.sum_w_sq_err_scaled);
  ratios["sum_w1_sq_err_scaled"] = num(r.ratios.sum_w1_sq_err_scaled);
  j["ratios"] = std::move(ratios);
  return j;
}

ojson to_json(const ExperimentResult& res) {
  ojson j;
  j["schema"] = "gramsum.moments";
  j["schema_version"] = kReportSchemaVersion;
  j["params"] = to_json(res.params);
  j["deterministic"] = res.config.deterministic;
  j["range"] = to_json(res.run.range);
  j["report"] = to_json(res.run.report);

  ojson nm;
  nm["m_w"] = num(res.normalized.m_w);
  nm["m_w1"] = num(res.normalized.m_w1);
  nm["m_cross"] = num(res.normalized.m_cross);
  nm["m_w_times_2K"] = num(res.normalized.m_w * 2 * res.params.K);
  nm["m_w1_times_24K3"] = num(res.normalized.m_w1 * 24 * std::pow(res.params.K, 3));
  j["normalized"] = std::move(nm);

  ojson th;
  th["g"] = res.theorem.g;
  th["lower_scale"] = num(res.theorem.lower_scale);
  th["ratio"] = num(res.theorem.ratio);
  th["count_shape"] = num(res.theorem.count_shape);
  th["consistent"] = res.theorem.consistent;
  j["theorem"] = std::move(th);
  j["sup_bound_ratio"] = num(res.sup_bound_ratio);

  ojson checks = ojson::array();
  for (const CheckVerdict& c : res.checks) {
    ojson cj;
    cj["name"] = c.name;
    cj["kind"] = std::string(kind_name(c.kind));
    cj["value"] = num(c.value);
    cj["lower"] = num(c.lower);
    cj["upper"] = num(c.upper);
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["warnings"] = res.warnings;

  ojson info;
  info["generated_at"] = res.generated_at;
  info["elapsed_seconds"] = num(res.elapsed_seconds);
  info["workers"] = res.config.workers;
  j[kRunInfoKey] = std::move(info);
  return j;
}

ojson to_json(const SweepResult& sweep) {
  ojson j;
  j["schema"] = "gramsum.sweep";
  j["schema_version"] = kReportSchemaVersion;
  ojson rows = ojson::array();
  for (const SweepRow& r : sweep.rows) {
    ojson row;
    row["T"] = num(r.T);
    row["status"] = r.status;
    if (r.result) row["result"] = without_run_info(to_json(*r.result));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["trend_ok"] = sweep.trend_ok;
  j["first_deviation"] = num(sweep.first_deviation);
  j["last_deviation"] = num(sweep.last_deviation);
  return j;
}

ojson to_json(const IdentitySummary& s) {
  ojson j;
  j["schema"] = "gramsum.identities";
  j["schema_version"] = kReportSchemaVersion;
  j["seed"] = s.seed;
  j["trials"] = s.trials;
  ojson v = ojson::array();
  for (const IdentityVerdict& iv : s.verdicts) {
    ojson e;
    e["name"] = iv.name;
    e["trials"] = iv.trials;
    e["max_residual"] = num(iv.max_residual);
    e["tolerance"] = num(iv.tolerance);
    e["pass"] = iv.pass;
    v.push_back(std::move(e));
  }
  j["verdicts"] = std::move(v);
  j["all_pass"] = s.all_pass();
  return j;
}

ojson to_json(const GramInterval& gi) {
  ojson j;
  j["schema"] = "gramsum.gram";
  j["schema_version"] = kReportSchemaVersion;
  j["T"] = num(gi.T);
  j["U"] = num(gi.U);
  j["q0"] = gi.q0;
  ojson pts = ojson::array();
  for (const GramPoint& g : gi.points) {
    ojson p;
    p["nu"] = g.nu;
    p["t"] = quad_to_string(g.t, 36);  // string: a double would drop ~17 digits
    p["residual"] = num(g.residual);
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  return j;
}

ojson to_json(const SumValues& v) {
  ojson j;
  j["S"] = num(v.S);
  j["S_star_mag"] = num(v.S_star_mag);
  j["w"] = num(v.w);
  j["w1"] = num(v.w1);
  j["w2"] = v.w2 ? num(*v.w2) : ojson(nullptr);
  j["w3"] = v.w3 ? num(*v.w3) : ojson(nullptr);
  j["diag_cos"] = num(v.diag_cos);
  j["harmonic"] = num(v.harmonic);
  return j;
}

ojson without_run_info(ojson j) {
  j.erase(kRunInfoKey);
  return j;
}

void write_points_csv(std::ostream& os, std::span<const PointRecord> points) {
  os << "nu,t,S,w,w1,S_star_mag\n";
  for (const PointRecord& p : points) {
    os << p.nu << ',' << quad_to_string(p.t, 36) << ',' << format_double(p.S) << ','
       << format_double(p.w) << ',' << format_double(p.w1) << ',' << format_double(p.S_star_mag)
       << '\n';
  }
}

void write_gram_csv(std::ostream& os, const GramInterval& gi) {
  os << "nu,t,residual\n";
  for (const GramPoint& g : gi.points) {
    os << g.nu << ',' << quad_to_string(g.t, 36) << ',' << format_double(g.residual) << '\n';
  }
}

std::span<const char* const> sweep_csv_columns() { return kSweepColumns; }

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  for (std::size_t i = 0; i < kSweepColumns.size(); ++i) {
    os << (i ? "," : "") << kSweepColumns[i];
  }
  os << '\n';
  for (const SweepRow& row : sweep.rows) {
    if (!row.result) {
      os << format_double(row.T);
      for (std::size_t i = 1; i + 1 < kSweepColumns.size(); ++i) os << ',';
      // Quote: error messages may contain commas.
      std::string msg = row.status;
      for (char& c : msg) if (c == '"') c = '\'';
      os << ",\"" << msg << "\"\n";
      continue;
    }
    const ExperimentResult& r = *row.result;
    const ExperimentParams& p = r.params;
    const MomentReport& m = r.run.report;
    const double vals[] = {
        p.T, p.psi, p.K, p.U, p.u_eval, p.P0, static_cast<double>(r.run.range.count),
        static_cast<double>(m.q0), m.q0_predicted, m.ratios.q0,
        m.sum_S_sq, m.ratios.mean_value,
        r.normalized.m_w, r.normalized.m_w1, r.normalized.m_cross,
        r.normalized.m_w * 2 * p.K, r.normalized.m_w1 * 24 * std::pow(p.K, 3),
        m.sum_w_sq, m.pred_sum_w_sq, m.ratios.sum_w_sq_err_scaled,
        m.sum_w1_sq, m.pred_sum_w1_sq, m.ratios.sum_w1_sq_err_scaled,
        static_cast<double>(m.g_count), static_cast<double>(m.q2), m.threshold,
        r.theorem.lower_scale, r.theorem.ratio, r.theorem.count_shape,
        r.sup_bound_ratio, m.max_abs_S, m.max_S_star_mag};
    static_assert(sizeof(vals) / sizeof(vals[0]) + 1 == kSweepColumns.size());
    for (std::size_t i = 0; i < std::size(vals); ++i) os << (i ? "," : "") << format_double(vals[i]);
    os << ',' << row.status << '\n';
  }
}

}  // namespace gramsum
