#pragma once

// Quad-precision brute-force sums. Every cosine is evaluated directly as
// cosq(t * logq(.)) with no shared tables, phase splitting or angle
// addition, so these values are independent of the kernels they check.

#include <cstdint>

#include "gramsum/quad.hpp"

namespace gramsum::reference {

struct ReferenceSums {
  Quad S = 0, S_im = 0, S_star_mag = 0;
  Quad w = 0, w1 = 0;
  Quad w2 = 0, w3 = 0;  // zero unless pairs were requested
  Quad diag_cos = 0, harmonic = 0;
};

/// Sums over n_min <= n <= n_max with w1 weights 1/sqrt(n) - 1/sqrt(P0) and
/// pair sums over m < n when with_pairs is set.
ReferenceSums brute_force(Quad t, std::int64_t n_min, std::int64_t n_max, Quad P0,
                          bool with_pairs);

/// fmodq(t * ln_n, 2pi) with the product formed in quad (exact for double inputs).
Quad phase_mod_two_pi(double t, double ln_n);

}  // namespace gramsum::reference
