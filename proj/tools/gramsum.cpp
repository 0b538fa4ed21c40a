// gramsum: Gram points, short trigonometric sums and their discrete moments.
//
//   gramsum params  --T 1e8 --psi loglog
//   gramsum gram    --T 1e6 --U 50 --format csv
//   gramsum sum     --t 1000000.5 --T 1e6
//   gramsum moments --T 1e6 --out report.json --points-csv points.csv
//   gramsum sweep   --T 1e6,1e7,1e8 --max-points 200000 --out sweep.csv
//   gramsum verify  --seed 7 --trials 1000
//
// Exit status: 0 ok, 1 validation error, 2 runtime/math error or failed
// hard check, 3 soft (trend) check outside tolerance.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
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

struct Common {
  double T = 1e6;
  std::optional<double> K;
  std::string psi = "loglog";
  std::optional<double> u_cap;
  bool relaxed = false;
  bool deterministic = true;
  unsigned workers = 1;
  std::string out;
  std::string format;  // empty: per-command default
};

void add_param_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--T", c.T, "Interval start T")->check(CLI::PositiveNumber);
  cmd->add_option("--K", c.K, "Range width parameter K (default: psi)");
  cmd->add_option("--psi", c.psi, "loglog | logloglog | <value>");
  cmd->add_flag("--relaxed", c.relaxed, "Do not enforce the parameter regime");
}

void add_run_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--u-cap", c.u_cap, "Evaluate only [T, T + u_cap]");
  cmd->add_flag("--deterministic,!--nondeterministic", c.deterministic,
                "Fixed reduction tree (default on)");
  cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* cmd, Common& c, bool csv) {
  cmd->add_option("--out", c.out, "Output file (default stdout)");
  if (csv) cmd->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

ExperimentConfig to_config(const Common& c) {
  ExperimentConfig cfg;
  cfg.T = c.T;
  cfg.psi = parse_psi(c.psi);
  cfg.K = c.K;
  cfg.relaxed = c.relaxed;
  cfg.u_cap = c.u_cap;
  cfg.workers = c.workers;
  cfg.deterministic = c.deterministic;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gramsum - Gram points and short trigonometric sums"};
  app.require_subcommand(1);

  Common c;

  auto* params_cmd = app.add_subcommand("params", "Validate parameters and print derived values");
  add_param_flags(params_cmd, c);
  add_output_flags(params_cmd, c, false);
  params_cmd->add_option("--u-cap", c.u_cap, "Evaluate only [T, T + u_cap]");

  std::optional<double> gram_U;
  std::optional<std::int64_t> gram_nu;
  auto* gram_cmd = app.add_subcommand("gram", "Enumerate Gram points in [T, T+U]");
  add_param_flags(gram_cmd, c);
  add_output_flags(gram_cmd, c, true);
  gram_cmd->add_option("--U", gram_U, "Interval length (default: derived from psi)");
  gram_cmd->add_option("--nu", gram_nu, "Solve a single index instead");
  gram_cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);

  std::string sum_t;
  bool sum_pairs = true;
  std::int64_t sum_cap = kDefaultPairCap;
  auto* sum_cmd = app.add_subcommand("sum", "Evaluate all sums at one abscissa");
  add_param_flags(sum_cmd, c);
  add_output_flags(sum_cmd, c, false);
  sum_cmd->add_option("--t", sum_t, "Abscissa (decimal, parsed at quad precision)")->required();
  sum_cmd->add_flag("--pairs,!--no-pairs", sum_pairs, "Include the quadratic pair sums");
  sum_cmd->add_option("--cap", sum_cap, "Maximum range length for pair sums");

  std::optional<std::size_t> max_points;
  std::string points_csv;
  auto* moments_cmd = app.add_subcommand("moments", "Run one experiment");
  add_param_flags(moments_cmd, c);
  add_run_flags(moments_cmd, c);
  add_output_flags(moments_cmd, c, false);
  moments_cmd->add_option("--max-points", max_points, "Evaluate at most this many Gram points");
  moments_cmd->add_option("--points-csv", points_csv, "Also write per-point values here");

  std::vector<double> sweep_T;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run one experiment per T");
  sweep_cmd->add_option("--T", sweep_T, "Interval starts (comma separated)")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--K", c.K, "Fixed K (default: psi(T) per row)");
  sweep_cmd->add_option("--psi", c.psi, "loglog | logloglog | <value>");
  sweep_cmd->add_flag("--relaxed", c.relaxed, "Do not enforce the parameter regime");
  add_run_flags(sweep_cmd, c);
  add_output_flags(sweep_cmd, c, true);
  sweep_cmd->add_option("--max-points", max_points, "Evaluate at most this many Gram points per T");

  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  IdentitySuiteOptions suite;
  auto* verify_cmd = app.add_subcommand("verify", "Randomized identity and oracle checks");
  verify_cmd->add_option("--seed", seed, "RNG seed");
  verify_cmd->add_option("--trials", trials, "Identity trials")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--oracle-trials", suite.oracle_trials, "Quad-oracle trials");
  verify_cmd->add_option("--cap", suite.cap, "Maximum range length");
  verify_cmd->add_option("--workers", suite.workers, "Worker threads")->check(CLI::PositiveNumber);
  add_output_flags(verify_cmd, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }
  if (c.format.empty()) c.format = sweep_cmd->parsed() ? "csv" : "json";

  try {
    if (params_cmd->parsed()) {
      const ExperimentParams p =
          validate_params(c.T, parse_psi(c.psi), c.K, c.relaxed, c.u_cap);
      auto j = to_json(p);
      j["k_upper_bound"] = k_upper_bound(p.T);
      emit(c.out, j.dump(2) + "\n");
      return kExitOk;
    }

    if (gram_cmd->parsed()) {
      GramInterval gi;
      if (gram_nu) {
        const GramPoint g = gram_point(*gram_nu);
        gi.T = static_cast<double>(g.t);
        gi.points.push_back(g);
        gi.q0 = 1;
      } else {
        double U = 0;
        if (gram_U) {
          U = *gram_U;
        } else {
          U = validate_params(c.T, parse_psi(c.psi), c.K, c.relaxed).U;
        }
        gi = gram_range(c.T, U, c.workers);
      }
      std::ostringstream os;
      if (c.format == "csv") {
        write_gram_csv(os, gi);
      } else {
        os << to_json(gi).dump(2) << '\n';
      }
      emit(c.out, os.str());
      return kExitOk;
    }

    if (sum_cmd->parsed()) {
      const ExperimentParams p = validate_params(c.T, parse_psi(c.psi), c.K, c.relaxed);
      const Quad t = parse_quad(sum_t);
      const NRange r = n_range(p.P0, p.K);
      const RangeTable table(r, p.P0);
      const bool pairs = sum_pairs && r.count <= sum_cap;
      const SumValues v = evaluate_sums(table, to_double_double(t), pairs, sum_cap);
      nlohmann::ordered_json j;
      j["schema"] = "gramsum.sum";
      j["schema_version"] = kReportSchemaVersion;
      j["t"] = quad_to_string(t, 36);
      j["params"] = to_json(p);
      j["range"] = to_json(r);
      j["sums"] = to_json(v);
      if (pairs) {
        const WSquaredParts ws = decompose_w_squared(table, to_double_double(t), sum_cap);
        const W1SquaredParts w1s = decompose_w1_squared(table, to_double_double(t), sum_cap);
        j["w_squared_residual"] = ws.residual;
        j["w1_squared_residual"] = w1s.residual;
      }
      emit(c.out, j.dump(2) + "\n");
      return kExitOk;
    }

    if (moments_cmd->parsed()) {
      ExperimentConfig cfg = to_config(c);
      cfg.max_points = max_points;
      cfg.keep_points = !points_csv.empty();
      const ExperimentResult res = run_experiment(cfg);
      emit(c.out, to_json(res).dump(2) + "\n");
      if (!points_csv.empty()) {
        std::ostringstream os;
        write_points_csv(os, res.run.points);
        emit(points_csv, os.str());
      }
      return exit_status(res);
    }

    if (sweep_cmd->parsed()) {
      ExperimentConfig cfg = to_config(c);
      cfg.max_points = max_points;
      const SweepResult sweep = run_sweep(sweep_T, cfg);
      std::ostringstream os;
      if (c.format == "csv") {
        write_sweep_csv(os, sweep);
      } else {
        os << to_json(sweep).dump(2) << '\n';
      }
      emit(c.out, os.str());
      return exit_status(sweep);
    }

    if (verify_cmd->parsed()) {
      const IdentitySummary s = identity_suite(seed, trials, suite);
      emit(c.out, to_json(s).dump(2) + "\n");
      return s.all_pass() ? kExitOk : kExitRuntime;
    }
  } catch (const ValidationError& e) {
    std::cerr << "gramsum: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "gramsum: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "gramsum: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
