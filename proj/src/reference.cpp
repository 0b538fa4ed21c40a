#include "gramsum/reference.hpp"

namespace gramsum::reference {

ReferenceSums brute_force(Quad t, std::int64_t n_min, std::int64_t n_max, Quad P0,
                          bool with_pairs) {
  ReferenceSums r;
  const Quad inv_sqrt_p0 = 1 / sqrtq(P0);
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    const Quad qn = static_cast<Quad>(n);
    const Quad phase = t * logq(qn);
    const Quad c = cosq(phase);
    const Quad isq = 1 / sqrtq(qn);
    r.S += c;
    r.S_im += sinq(phase);
    r.w += isq * c;
    r.w1 += (isq - inv_sqrt_p0) * c;
    r.diag_cos += cosq(2 * phase) / qn;
    r.harmonic += 1 / qn;
  }
  r.S_star_mag = hypotq(r.S, r.S_im);
  if (with_pairs) {
    for (std::int64_t n = n_min; n <= n_max; ++n) {
      for (std::int64_t m = n_min; m < n; ++m) {
        const Quad qn = static_cast<Quad>(n);
        const Quad qm = static_cast<Quad>(m);
        const Quad weight = 1 / sqrtq(qn * qm);
        r.w2 += weight * cosq(t * logq(qn / qm));
        r.w3 += weight * cosq(t * logq(qn * qm));
      }
    }
  }
  return r;
}

Quad phase_mod_two_pi(double t, double ln_n) {
  const Quad x = static_cast<Quad>(t) * static_cast<Quad>(ln_n);
  Quad r = fmodq(x, kQuadTwoPi);
  if (r < 0) r += kQuadTwoPi;
  return r;
}

}  // namespace gramsum::reference
