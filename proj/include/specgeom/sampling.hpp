#pragma once

// Deterministic sampling of base and total-space domain points. Boxes are
// chosen well inside the tolerance envelope of the curvature stencils
// (coordinates <= 5, moderate condition numbers, stencil margin to rho = 0).

#include "specgeom/cmap.hpp"
#include "specgeom/core.hpp"
#include "specgeom/special_kahler.hpp"

namespace specgeom {

inline CVec sample_psk(const PrepotentialModel& m, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CVec X(m.n);
    if (m.kind == PrepotentialModel::Kind::quadratic) {
      for (int mu = 0; mu < m.n; ++mu) {
        X[mu] = Complex(rng.symmetric(0.55), rng.symmetric(0.55));
      }
      if (m.n > 0 && X.norm() >= 0.8) continue;
    } else {
      for (int mu = 0; mu < m.n; ++mu) {
        X[mu] = Complex(rng.symmetric(1.2), rng.uniform(0.5, 2.0));
      }
    }
    if (m.n == 0 || psk_in_domain(m, X)) return X;
  }
  throw ValidationError("could not sample a domain point for this model");
}

inline QkPoint sample_qk(const PrepotentialModel& m, Rng& rng, double rho_lo = 0.7,
                         double rho_hi = 3.0) {
  QkPoint q;
  q.X = sample_psk(m, rng);
  q.rho = rng.uniform(rho_lo, rho_hi);
  q.phit = rng.symmetric(1.5);
  q.zt = rng.uniform_vec(m.n + 1, -1.0, 1.0);
  q.zeta = rng.uniform_vec(m.n + 1, -1.0, 1.0);
  return q;
}

}  // namespace specgeom
