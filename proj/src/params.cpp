#include "gramsum/params.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

namespace gramsum {
namespace {

std::string join(const std::vector<Constraint>& v) {
  std::string s = "parameter validation failed:";
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += i ? "; " : " ";
    s += to_string(v[i]);
  }
  return s;
}

}  // namespace

PsiSpec parse_psi(std::string_view text) {
  if (text == "loglog") return {PsiKind::kLogLog, 0.0};
  if (text == "logloglog") return {PsiKind::kLogLogLog, 0.0};
  double v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !(v > 0) || !std::isfinite(v)) {
    throw std::invalid_argument("psi must be loglog, logloglog or a positive number, got '" +
                                std::string(text) + "'");
  }
  return {PsiKind::kCustom, v};
}

std::string_view to_string(PsiKind kind) {
  switch (kind) {
    case PsiKind::kLogLog: return "loglog";
    case PsiKind::kLogLogLog: return "logloglog";
    case PsiKind::kCustom: return "custom";
  }
  return "?";
}

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::kNonPositiveT: return "T must be positive";
    case Constraint::kPsiUndefined: return "psi undefined or not positive at this T";
    case Constraint::kNonPositiveK: return "K must be positive";
    case Constraint::kKBelowPsi: return "K below psi";
    case Constraint::kKAboveCap: return "K above T^(1/6) ln^2 T";
    case Constraint::kPsiNotBelowLogT: return "psi not below ln T";
    case Constraint::kBadUCap: return "u_cap must be non-negative";
  }
  return "?";
}

ValidationError::ValidationError(std::vector<Constraint> violations)
    : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

double k_upper_bound(double T) {
  const double lt = std::log(T);
  return std::cbrt(std::sqrt(T)) * lt * lt;
}

ExperimentParams validate_params(double T, PsiSpec psi, std::optional<double> K, bool relaxed,
                                 std::optional<double> u_cap) {
  std::vector<Constraint> bad;
  if (!(T > 0) || !std::isfinite(T)) {
    throw ValidationError({Constraint::kNonPositiveT});
  }

  ExperimentParams p;
  p.T = T;
  p.psi_kind = psi.kind;
  p.relaxed = relaxed;
  const double log_t = std::log(T);

  switch (psi.kind) {
    case PsiKind::kLogLog:
      // psi > 1 requires T > e^e.
      if (!(T > std::exp(std::numbers::e))) bad.push_back(Constraint::kPsiUndefined);
      p.psi = T > 1 ? std::log(log_t) : 0.0;
      break;
    case PsiKind::kLogLogLog:
      p.psi = T > std::numbers::e ? std::log(std::log(log_t)) : 0.0;
      if (!(p.psi > 0)) bad.push_back(Constraint::kPsiUndefined);
      break;
    case PsiKind::kCustom:
      p.psi = psi.value;
      if (!(p.psi > 0)) bad.push_back(Constraint::kPsiUndefined);
      break;
  }

  p.K = K.value_or(p.psi);
  if (!(p.K > 0) || !std::isfinite(p.K)) bad.push_back(Constraint::kNonPositiveK);

  if (!relaxed) {
    if (p.K < p.psi) bad.push_back(Constraint::kKBelowPsi);
    if (p.K > k_upper_bound(T)) bad.push_back(Constraint::kKAboveCap);
    if (!(p.psi < log_t)) bad.push_back(Constraint::kPsiNotBelowLogT);
  }
  if (u_cap && !(*u_cap >= 0)) bad.push_back(Constraint::kBadUCap);

  if (!bad.empty()) throw ValidationError(std::move(bad));

  p.U = std::sqrt(T) * p.psi * log_t;
  p.P0 = std::sqrt(T / (2 * std::numbers::pi));
  p.u_eval = u_cap ? std::min(p.U, *u_cap) : p.U;
  return p;
}

}  // namespace gramsum
