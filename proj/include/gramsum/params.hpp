#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gramsum {

enum class PsiKind { kLogLog, kLogLogLog, kCustom };

/// How psi(T) is chosen: ln ln T, ln ln ln T, or a fixed value.
struct PsiSpec {
  PsiKind kind = PsiKind::kLogLog;
  double value = 0.0;  // used only for kCustom
};

/// Accepts "loglog", "logloglog" or a positive number.
PsiSpec parse_psi(std::string_view text);
std::string_view to_string(PsiKind kind);

struct ExperimentParams {
  double T = 0;
  double psi = 0;
  double K = 0;
  double U = 0;       // sqrt(T) * psi * ln T
  double P0 = 0;      // sqrt(T / 2pi)
  PsiKind psi_kind = PsiKind::kLogLog;
  bool relaxed = false;
  double u_eval = 0;  // interval actually enumerated: min(U, u_cap)
};

enum class Constraint {
  kNonPositiveT,
  kPsiUndefined,      // T too small for the chosen psi kind, or psi <= 0
  kNonPositiveK,
  kKBelowPsi,         // psi <= K
  kKAboveCap,         // K <= T^(1/6) ln^2 T
  kPsiNotBelowLogT,   // psi < ln T
  kBadUCap,
};

std::string_view to_string(Constraint c);

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<Constraint> violations);
  const std::vector<Constraint>& violations() const { return violations_; }
  Constraint constraint() const { return violations_.front(); }

 private:
  std::vector<Constraint> violations_;
};

/// Computes psi, U and P0 and enforces the parameter regime
///   psi <= K <= T^(1/6) ln^2 T,  psi < ln T.
/// `relaxed` skips the regime checks (domain checks still apply) so small T
/// can be exercised. K defaults to psi. Every violated constraint is listed
/// in the thrown ValidationError.
ExperimentParams validate_params(double T, PsiSpec psi, std::optional<double> K = {},
                                 bool relaxed = false, std::optional<double> u_cap = {});

/// T^(1/6) ln^2 T
double k_upper_bound(double T);

}  // namespace gramsum
