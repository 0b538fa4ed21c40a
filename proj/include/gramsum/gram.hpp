#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gramsum/params.hpp"
#include "gramsum/quad.hpp"

namespace gramsum {

/// Solution of theta(t) = pi * nu.
struct GramPoint {
  std::int64_t nu = 0;
  Quad t = 0;
  double residual = 0;  // |theta(t) - pi nu|
};

/// All Gram points with T <= t <= T + U, sorted by nu with no gaps.
struct GramInterval {
  std::vector<GramPoint> points;
  double T = 0;
  double U = 0;
  std::size_t q0 = 0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::int64_t nu, Quad last_iterate, int iterations);
  std::int64_t nu() const { return nu_; }
  Quad last_iterate() const { return last_; }
  int iterations() const { return iterations_; }

 private:
  std::int64_t nu_;
  Quad last_;
  int iterations_;
};

inline constexpr int kGramMaxIterations = 50;

/// Newton iteration on theta(t) - pi nu from the inverse of the leading
/// term, t0 = 2pi (nu + 1/8) / W((nu + 1/8) / e). Iterates until
/// |theta(t) - pi nu| <= 1e-10 max(1, pi nu), then takes one polishing step.
/// Pure and deterministic in nu.
GramPoint gram_point(std::int64_t nu);

/// Smallest nu >= 1 with t_nu >= T.
std::int64_t first_gram_index(double T);

/// Enumerates the closed interval [T, T + U]. Requires T >= 100, U >= 0.
/// Index blocks may be solved on `workers` threads; output order and values
/// do not depend on the worker count.
GramInterval gram_range(double T, double U, unsigned workers = 1);

/// Main term (1/2pi) U ln(T/2pi) of the Gram point count.
double q0_predicted(double T, double U);
/// Same, over the enumerated interval length params.u_eval.
double q0_predicted(const ExperimentParams& params);

}  // namespace gramsum
