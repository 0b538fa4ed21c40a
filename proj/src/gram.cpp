#include "gramsum/gram.hpp"

#include <boost/math/special_functions/lambert_w.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gramsum/parallel.hpp"
#include "gramsum/theta.hpp"

namespace gramsum {
namespace {

constexpr std::size_t kBlock = 2048;

Quad initial_guess(std::int64_t nu) {
  const double x = (static_cast<double>(nu) + 0.125) / std::numbers::e;
  const double w = boost::math::lambert_w0(x);
  return kQuadTwoPi * (static_cast<Quad>(nu) + Quad(1) / 8) / w;
}

}  // namespace

ConvergenceError::ConvergenceError(std::int64_t nu, Quad last_iterate, int iterations)
    : std::runtime_error("gram_point: Newton failed to converge for nu = " + std::to_string(nu) +
                         ", last iterate " + quad_to_string(last_iterate, 20)),
      nu_(nu), last_(last_iterate), iterations_(iterations) {}

GramPoint gram_point(std::int64_t nu) {
  if (nu < 1) throw std::invalid_argument("gram_point: nu must be >= 1");
  const Quad target = kQuadPi * static_cast<Quad>(nu);
  const Quad tol = Quad(1e-10) * std::max<Quad>(1, target);

  Quad t = initial_guess(nu);
  for (int iter = 0; iter < kGramMaxIterations; ++iter) {
    const ThetaEval e = theta(t);
    const Quad f = e.value - target;
    if (qabs(f) <= tol) {
      t -= f / e.deriv;  // polish
      GramPoint g;
      g.nu = nu;
      g.t = t;
      g.residual = static_cast<double>(qabs(theta(t).value - target));
      return g;
    }
    Quad next = t - f / e.deriv;
    // theta has its minimum near t = 6.29; keep iterates on the increasing branch.
    if (!(next > 10)) next = (t + 10) / 2;
    t = next;
  }
  throw ConvergenceError(nu, t, kGramMaxIterations);
}

std::int64_t first_gram_index(double T) {
  if (!(T > 0)) throw std::invalid_argument("first_gram_index: T must be positive");
  std::int64_t nu = 1;
  if (T >= kThetaAsymptoticFloor) {
    nu = std::max<std::int64_t>(1, static_cast<std::int64_t>(ceilq(theta(T).value / kQuadPi)));
  }
  // Guard the rounding at the boundary.
  while (nu > 1 && gram_point(nu - 1).t >= T) --nu;
  while (gram_point(nu).t < T) ++nu;
  return nu;
}

GramInterval gram_range(double T, double U, unsigned workers) {
  if (!(T >= kThetaAsymptoticFloor)) throw std::invalid_argument("gram_range: T must be >= 100");
  if (!(U >= 0)) throw std::invalid_argument("gram_range: U must be >= 0");

  GramInterval out;
  out.T = T;
  out.U = U;
  const Quad end = static_cast<Quad>(T) + static_cast<Quad>(U);

  const std::int64_t first = first_gram_index(T);
  const std::int64_t last_est = static_cast<std::int64_t>(floorq(theta(end).value / kQuadPi)) + 1;
  const std::int64_t n_est = std::max<std::int64_t>(0, last_est - first + 1);

  std::vector<GramPoint> pts(static_cast<std::size_t>(n_est));
  const std::size_t blocks = (pts.size() + kBlock - 1) / kBlock;
  parallel_blocks(blocks, workers, [&](std::size_t b, unsigned) {
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(pts.size(), lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      pts[i] = gram_point(first + static_cast<std::int64_t>(i));
    }
  });

  // The estimate may fall one short at the upper boundary.
  std::int64_t nu = first + n_est;
  for (;;) {
    GramPoint g = gram_point(nu++);
    if (g.t > end) break;
    pts.push_back(g);
  }
  while (!pts.empty() && pts.back().t > end) pts.pop_back();

  out.points = std::move(pts);
  out.q0 = out.points.size();
  return out;
}

double q0_predicted(double T, double U) {
  return U * std::log(T / (2 * std::numbers::pi)) / (2 * std::numbers::pi);
}

double q0_predicted(const ExperimentParams& params) { return q0_predicted(params.T, params.u_eval); }

}  // namespace gramsum
