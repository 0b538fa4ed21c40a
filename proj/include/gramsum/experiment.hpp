#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gramsum/moments.hpp"
#include "gramsum/params.hpp"

namespace gramsum {

struct SoftTolerances {
  double mean_ratio_lo = 0.5;
  double mean_ratio_hi = 2.0;
  double err_shape_max = 10.0;
};

struct ExperimentConfig {
  double T = 1e6;
  PsiSpec psi;
  std::optional<double> K;
  bool relaxed = false;
  std::optional<double> u_cap;
  /// Caps the interval so at most this many Gram points are evaluated; the
  /// cut is placed midway between the last kept point and the next one.
  std::optional<std::size_t> max_points;
  unsigned workers = 1;
  bool deterministic = true;
  bool keep_points = false;
  SoftTolerances soft;
};

enum class CheckKind { kHard, kSoft };

struct CheckVerdict {
  std::string name;
  CheckKind kind = CheckKind::kHard;
  double value = 0;
  double lower = 0;  // pass iff lower <= value <= upper
  double upper = 0;
  bool pass = false;
};

struct ExperimentResult {
  ExperimentConfig config;
  ExperimentParams params;
  MomentRun run;
  NormalizedMoments normalized;
  TheoremReport theorem;
  double sup_bound_ratio = 0;
  std::vector<CheckVerdict> checks;
  std::vector<std::string> warnings;
  double elapsed_seconds = 0;
  std::string generated_at;

  bool hard_ok() const;
  bool soft_ok() const;
};

/// Validates, enumerates, accumulates and grades one experiment.
/// Throws ValidationError, EmptyIntervalError or solver errors.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Exit codes shared by the CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitRuntime = 2,
  kExitSoftDeviation = 3,
};

int exit_status(const ExperimentResult& result);

struct SweepRow {
  double T = 0;
  std::string status;  // "ok" or "error: ..."
  std::optional<ExperimentResult> result;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ascending T
  /// |mean-value ratio - 1| at the largest successful T is no larger than at the smallest.
  bool trend_ok = false;
  double first_deviation = 0;
  double last_deviation = 0;
};

/// One experiment per T with the shared settings (K unset means K = psi(T)).
/// Requires at least two values; failing rows are recorded and the sweep continues.
SweepResult run_sweep(std::vector<double> Ts, const ExperimentConfig& shared);

int exit_status(const SweepResult& sweep);

struct IdentitySuiteOptions {
  std::int64_t cap = kDefaultPairCap;
  std::size_t oracle_trials = 100;
  std::int64_t oracle_max_count = 1000;
  std::size_t empty_every = 50;  // every n-th trial uses an empty range; 0 disables
  unsigned workers = 1;
};

struct IdentityVerdict {
  std::string name;
  std::size_t trials = 0;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
};

struct IdentitySummary {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<IdentityVerdict> verdicts;

  bool all_pass() const;
  const IdentityVerdict& at(const std::string& name) const;
};

/// Randomized exact-identity checks and quad-oracle equivalence of the kernels.
IdentitySummary identity_suite(std::uint64_t seed, std::size_t trials,
                               const IdentitySuiteOptions& options = {});

}  // namespace gramsum
