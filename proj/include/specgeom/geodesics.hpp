#pragma once

// Geodesic integration and curve-length functionals used by the completeness
// probes. Fixed-step classical RK4 on xdd + Gamma(xd, xd) = 0; no adaptivity,
// so convergence order is testable. Domain exits are detected through the
// metric field's own domain errors.

#include <cmath>
#include <vector>

#include "specgeom/cmap.hpp"
#include "specgeom/core.hpp"
#include "specgeom/curvature.hpp"
#include "specgeom/diff.hpp"

namespace specgeom {

struct GeodesicState {
  Vec position;
  Vec velocity;
  double t = 0.0;
};

enum class StopReason { time_elapsed, left_domain, step_underflow };

struct Trajectory {
  std::vector<GeodesicState> samples;
  StopReason termination = StopReason::time_elapsed;
};

inline Trajectory geodesic_integrate(const MetricField& gf, const GeodesicState& s0,
                                     double T, int steps) {
  if (steps <= 0) throw PreconditionError("geodesic_integrate: steps must be positive");
  // Fail loudly if the initial point is already outside the domain.
  (void)fd::checked_eval(gf.eval, s0.position);

  const Index d = gf.dim;
  auto accel = [&](const Vec& x, const Vec& v) -> Vec {
    const Tensor3 gamma = christoffel(gf, x);
    Vec a = Vec::Zero(d);
    for (Index i = 0; i < d; ++i) {
      double acc = 0.0;
      for (Index j = 0; j < d; ++j)
        for (Index k = 0; k < d; ++k) acc += gamma(i, j, k) * v[j] * v[k];
      a[i] = -acc;
    }
    return a;
  };

  Trajectory traj;
  traj.samples.push_back(s0);
  const double dt = T / steps;
  Vec x = s0.position, v = s0.velocity;
  double t = s0.t;
  for (int s = 0; s < steps; ++s) {
    if (t + dt == t) {
      traj.termination = StopReason::step_underflow;
      return traj;
    }
    try {
      const Vec k1x = v, k1v = accel(x, v);
      const Vec k2x = v + 0.5 * dt * k1v, k2v = accel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v);
      const Vec k3x = v + 0.5 * dt * k2v, k3v = accel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v);
      const Vec k4x = v + dt * k3v, k4v = accel(x + dt * k3x, v + dt * k3v);
      const Vec xn = x + (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      const Vec vn = v + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      (void)fd::checked_eval(gf.eval, xn);
      x = xn;
      v = vn;
      t += dt;
    } catch (const DomainError&) {
      traj.termination = StopReason::left_domain;
      return traj;
    } catch (const EvaluationError&) {
      traj.termination = StopReason::left_domain;
      return traj;
    }
    traj.samples.push_back(GeodesicState{x, v, t});
  }
  traj.termination = StopReason::time_elapsed;
  return traj;
}

// Trapezoidal length of a polyline: sum of (1/2)(|d|_{g(p)} + |d|_{g(p')})
// over segments d = p' - p.
inline double curve_length(const MetricField& gf, const std::vector<Vec>& samples) {
  if (samples.size() < 2) {
    throw PreconditionError("curve_length needs at least two samples");
  }
  double len = 0.0;
  Mat g_prev = fd::checked_eval(gf.eval, samples[0]);
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const Mat g_next = fd::checked_eval(gf.eval, samples[k + 1]);
    const Vec d = samples[k + 1] - samples[k];
    const double a = std::sqrt(std::max(0.0, d.dot(g_prev * d)));
    const double b = std::sqrt(std::max(0.0, d.dot(g_next * d)));
    len += 0.5 * (a + b);
    g_prev = g_next;
  }
  return len;
}

struct RadialProbe {
  double length = 0.0;
  double bound = 0.0;  // (1/2) log(rho0/eps), saturated exactly at c = 0
};

// Length of the radial rho-segment rho0 -> eps at fixed remaining coordinates,
// against the analytic lower bound (1/2) log(rho0/eps). Geometric sampling
// keeps the trapezoid error well under the comparison tolerances.
inline RadialProbe radial_divergence_probe(const PrepotentialModel& m, double c,
                                           double rho0, double eps,
                                           const QkPoint& q_base, int samples = 4096) {
  if (!(0.0 < eps && eps < rho0)) {
    throw PreconditionError("radial probe needs 0 < eps < rho0");
  }
  const MetricField gf = deformed_fs_field(m, c);
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  const double ratio = std::pow(eps / rho0, 1.0 / (samples - 1));
  QkPoint q = q_base;
  double r = rho0;
  for (int k = 0; k < samples; ++k) {
    q.rho = (k == samples - 1) ? eps : r;
    pts.push_back(qk_to_chart(q));
    r *= ratio;
  }
  RadialProbe probe;
  probe.length = curve_length(gf, pts);
  probe.bound = 0.5 * std::log(rho0 / eps);
  if (probe.length < probe.bound - 1e-6) {
    throw Error("radial segment shorter than its analytic bound");
  }
  return probe;
}

}  // namespace specgeom
