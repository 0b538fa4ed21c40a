#include <doctest.h>

#include <cmath>

#include "gramsum/gram.hpp"
#include "gramsum/theta.hpp"

using namespace gramsum;

namespace {
double d(Quad x) { return static_cast<double>(x); }
}  // namespace

TEST_CASE("first Gram points") {
  CHECK(std::fabs(d(gram_point(1).t - 23.1702827012463093Q)) < 1e-14);
  CHECK(std::fabs(d(gram_point(2).t - 27.6701822178163380Q)) < 1e-14);
  CHECK_THROWS_AS(gram_point(0), std::invalid_argument);
}

TEST_CASE("residuals hold against the oracle") {
  for (const std::int64_t nu : {1LL, 10LL, 1000LL, 123456LL, 98765432LL, 1500000000LL}) {
    const GramPoint g = gram_point(nu);
    const Quad target = kQuadPi * static_cast<Quad>(nu);
    CHECK(g.residual <= 1e-9);
    CHECK(std::fabs(d(theta_oracle(g.t, 34) - target)) <= 1e-9);
  }
}

TEST_CASE("solver is deterministic per index") {
  const GramPoint a = gram_point(4242424);
  const GramPoint b = gram_point(4242424);
  CHECK(a.t == b.t);
  CHECK(a.residual == b.residual);
}

TEST_CASE("first_gram_index brackets T") {
  for (const double T : {100.0, 1e4, 1e6, 12345678.9}) {
    const std::int64_t nu = first_gram_index(T);
    CHECK(gram_point(nu).t >= T);
    CHECK(gram_point(nu - 1).t < T);
  }
}

TEST_CASE("range is consecutive with the expected spacing") {
  const GramInterval gi = gram_range(1e4, 500);
  REQUIRE(gi.points.size() > 10);
  CHECK(gi.q0 == gi.points.size());
  CHECK(gi.points.front().t >= 1e4);
  CHECK(gi.points.back().t <= 1e4 + 500);
  for (std::size_t i = 1; i < gi.points.size(); ++i) {
    CHECK(gi.points[i].nu == gi.points[i - 1].nu + 1);
    const double gap = d(gi.points[i].t - gi.points[i - 1].t);
    const double expect = 2 * M_PI / std::log(d(gi.points[i].t) / (2 * M_PI));
    CHECK(std::fabs(gap / expect - 1) < 0.1);
  }
  // Neighbours outside the window are really outside.
  CHECK(gram_point(gi.points.front().nu - 1).t < 1e4);
  CHECK(gram_point(gi.points.back().nu + 1).t > 1e4 + 500);
}

TEST_CASE("empty window") {
  const GramInterval gi = gram_range(1e6, 0);
  CHECK(gi.q0 <= 1);
  CHECK(gi.q0 == gi.points.size());
}

TEST_CASE("worker count does not change the enumeration") {
  const GramInterval a = gram_range(2e6, 3000, 1);
  const GramInterval b = gram_range(2e6, 3000, 4);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].nu == b.points[i].nu);
    CHECK(a.points[i].t == b.points[i].t);
  }
}

TEST_CASE("count near T = 1e6 follows the main term") {
  const double T = 1e6, U = 20000;
  const GramInterval gi = gram_range(T, U);
  CHECK(std::fabs(static_cast<double>(gi.q0) - q0_predicted(T, U)) <= 10 * (U * U / T + 1));
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(gram_range(50, 10), std::invalid_argument);
  CHECK_THROWS_AS(gram_range(1e4, -1), std::invalid_argument);
}
