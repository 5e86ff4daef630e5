#pragma once

// The projective special Kahler base in the inhomogeneous chart X (z^0 = 1):
// Kahler potential K = -log sum X^I N_IJ(X) Xbar^J, its metric gbar on the
// real chart (y^1..y^n, x^1..x^n) with y = Re X, x = Im X, the one-form
// d^c K, and the cubic (r-map) closed forms
//   K_{mu nubar}  = -h_mn/(4h) + h_m h_n/(4h^2)
//   K^{nubar la}  = -4 h h^{nl} + 2 x^n x^l.
//
// Matrix basis, fixed once for the whole repo: row/column order is
// (y^1..y^n, x^1..x^n); the complex Hessian maps to real components via
//   g(dy,dy) = g(dx,dx) = Re K_{mu nubar},  g(dy^mu, dx^nu) = Im K_{mu nubar}.

#include <cmath>

#include "specgeom/core.hpp"
#include "specgeom/diff.hpp"
#include "specgeom/prepotential.hpp"

namespace specgeom {

struct PskPoint {
  CVec X;
};

inline Vec psk_real_chart(const CVec& X) {
  const Index n = X.size();
  Vec p(2 * n);
  p.head(n) = X.real();
  p.tail(n) = X.imag();
  return p;
}

inline CVec psk_from_real_chart(const Vec& p) {
  const Index n = p.size() / 2;
  CVec X(n);
  for (Index i = 0; i < n; ++i) X[i] = Complex(p[i], p[n + i]);
  return X;
}

inline CVec homogeneous(const CVec& X) {
  CVec z(X.size() + 1);
  z[0] = 1.0;
  z.tail(X.size()) = X;
  return z;
}

// Membership test for the inhomogeneous chart. The very-special domain is
// only implicitly characterised by the model, so we accept any x with
// h(x) > 0 on which -d^2 h is positive definite transverse to the radial
// direction, i.e. has eigenvalue signs (n-1 positive, 1 negative).
inline bool psk_in_domain(const PrepotentialModel& m, const CVec& X) {
  if (m.kind == PrepotentialModel::Kind::quadratic) {
    return X.norm() < 1.0;
  }
  const Vec x = X.imag();
  const double h = m.cubic.value(x);
  if (!(h > 0.0)) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(-m.cubic.hess(x), Eigen::EigenvaluesOnly);
  const Vec ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  int pos = 0, neg = 0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) < 1e-10 * scale) return false;
    (ev[i] > 0 ? pos : neg)++;
  }
  return neg == 1 && pos == m.n - 1;
}

inline double kahler_potential(const PrepotentialModel& m, const CVec& X) {
  const double f = cone_function(m, homogeneous(X));
  if (!(f > 0.0)) throw DomainError("Kahler potential: f <= 0 at this point");
  return -std::log(f);
}

// r-map closed form K = -log 8h(x); for very-special models this agrees with
// kahler_potential since 8 |z^0|^2 h(x) = sum z N zbar.
inline double kahler_potential_cubic(const CubicForm& h, const Vec& x) {
  const double v = h.value(x);
  if (!(v > 0.0)) throw DomainError("Kahler potential: h(x) <= 0");
  return -std::log(8.0 * v);
}

namespace detail {

// dG/dX^mu for G = sum z N zbar at z = (1, X); G is real and G_{mu nubar} = N.
inline CVec cone_gradient(const PrepotentialJet& jet) {
  const int n = static_cast<int>(jet.z.size()) - 1;
  const Complex i_(0.0, 1.0);
  CVec g(n);
  for (int mu = 1; mu <= n; ++mu) {
    Complex acc{};
    for (int I = 0; I <= n; ++I) acc += std::conj(jet.z[I]) * jet.F_IJ(I, mu);
    g[mu - 1] = -i_ * (acc - std::conj(jet.F_I[mu]));
  }
  return g;
}

}  // namespace detail

// First holomorphic derivatives K_mu = dK/dX^mu (analytic, via the jet).
inline CVec kahler_gradient(const PrepotentialModel& m, const CVec& X) {
  const SpecialMatrices sm = special_matrices(m, homogeneous(X));
  return -detail::cone_gradient(sm.jet) / sm.f;
}

// Complex Hessian K_{mu nubar}, analytic for both families.
inline CMat kahler_hessian(const PrepotentialModel& m, const CVec& X) {
  const SpecialMatrices sm = special_matrices(m, homogeneous(X));
  const CVec Gmu = detail::cone_gradient(sm.jet);
  const Mat Nbase = sm.N.bottomRightCorner(m.n, m.n);
  CMat K = -Nbase.cast<Complex>() / sm.f + (Gmu * Gmu.adjoint()) / (sm.f * sm.f);
  // Hermitian by construction up to rounding; enforce exactly.
  K = 0.5 * (K + K.adjoint()).eval();
  return K;
}

inline Mat hermitian_to_real_metric(const CMat& K) {
  const Index n = K.rows();
  Mat g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = K.real();
  g.bottomRightCorner(n, n) = K.real();
  g.topRightCorner(n, n) = K.imag();
  g.bottomLeftCorner(n, n) = K.imag().transpose();
  return g;
}

namespace detail {

inline void require_positive_definite(const Mat& g, const char* what) {
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) {
    throw ModelViolationError(std::string(what) + " is not positive definite");
  }
}

}  // namespace detail

// Base metric gbar in the (y, x) chart. Very-special models use the cubic
// closed form, the quadratic family the analytic complex Hessian.
inline Mat base_metric(const PrepotentialModel& m, const CVec& X) {
  if (m.kind == PrepotentialModel::Kind::very_special) {
    if (!psk_in_domain(m, X)) {
      throw DomainError("base_metric: point outside the very-special domain");
    }
    const Vec x = X.imag();
    const double h = m.cubic.value(x);
    const Vec hg = m.cubic.grad(x);
    const Mat hh = m.cubic.hess(x);
    const Mat K = -hh / (4.0 * h) + hg * hg.transpose() / (4.0 * h * h);
    Mat g(2 * m.n, 2 * m.n);
    g.setZero();
    g.topLeftCorner(m.n, m.n) = K;
    g.bottomRightCorner(m.n, m.n) = K;
    detail::require_positive_definite(g, "base metric");
    return g;
  }
  const Mat g = hermitian_to_real_metric(kahler_hessian(m, X));
  detail::require_positive_definite(g, "base metric");
  return g;
}

// Complex-Hessian route (analytic) for either family; cross-checks Eq-based
// assembly in the cubic case.
inline Mat base_metric_hessian(const PrepotentialModel& m, const CVec& X) {
  return hermitian_to_real_metric(kahler_hessian(m, X));
}

// Finite-difference Hessian of K over the real chart, the independent
// numerical route.
inline Mat base_metric_fd(const PrepotentialModel& m, const CVec& X) {
  const Index n = m.n;
  ScalarField K = [&m](const Vec& p) {
    return kahler_potential(m, psk_from_real_chart(p));
  };
  const Mat H = scalar_hessian(K, psk_real_chart(X));
  const Mat Hyy = H.topLeftCorner(n, n);
  const Mat Hxx = H.bottomRightCorner(n, n);
  const Mat Hyx = H.topRightCorner(n, n);
  Mat g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = 0.25 * (Hyy + Hxx);
  g.bottomRightCorner(n, n) = g.topLeftCorner(n, n);
  g.topRightCorner(n, n) = 0.25 * (Hyx - Hyx.transpose());
  g.bottomLeftCorner(n, n) = g.topRightCorner(n, n).transpose();
  return g;
}

// K^{nubar lambda} = -4h h^{nl} + 2 x^n x^l, inverse of the cubic K_{mu nubar}.
inline Mat base_metric_inverse_cubic(const CubicForm& h, const Vec& x) {
  const Mat hh = h.hess(x);
  Eigen::SelfAdjointEigenSolver<Mat> es(hh);
  const Vec ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  if (ev.cwiseAbs().minCoeff() < 1e-12 * scale) {
    throw SingularMatrixError("cubic Hessian h_mn is singular at this point");
  }
  const Mat hinv = es.eigenvectors() * ev.cwiseInverse().asDiagonal() *
                   es.eigenvectors().transpose();
  return -4.0 * h.value(x) * hinv + 2.0 * x * x.transpose();
}

// d K as a covector on the (y, x) chart.
inline Vec d_potential(const PrepotentialModel& m, const CVec& X) {
  const CVec Kmu = kahler_gradient(m, X);
  Vec d(2 * m.n);
  d.head(m.n) = 2.0 * Kmu.real();
  d.tail(m.n) = -2.0 * Kmu.imag();
  return d;
}

// d^c K = sign * (-dK o J) with J(d_y) = d_x fixed. The paper pins the sign
// only through the internal consistency of the frame forms; sign = +1 is the
// convention selected by that test (see cmap detect_conventions), and only
// (d^c K)^2 enters any metric.
inline Vec dc_potential(const PrepotentialModel& m, const CVec& X, int sign = +1) {
  const CVec Kmu = kahler_gradient(m, X);
  Vec d(2 * m.n);
  d.head(m.n) = sign * 2.0 * Kmu.imag();
  d.tail(m.n) = sign * 2.0 * Kmu.real();
  return d;
}

}  // namespace specgeom
