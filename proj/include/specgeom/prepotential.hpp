#pragma once

// Holomorphic prepotential families and their derivative jets to third order,
// plus the point data derived from them: the real symmetric matrix
// N_IJ = 2 Im F_IJ of signature (1, n), the cone function
// f(z) = sum N_IJ z^I zbar^J, the complex symmetric matrix
// scriptN_IJ = Fbar_IJ + i (N z)_I (N z)_J / (z^T N z), its real and
// imaginary parts, and the block matrix Hhat built from them.
//
// Two families are supported:
//   quadratic:    F = (i/2)((z^0)^2 - sum (z^mu)^2)   on |z^0|^2 > sum|z^mu|^2
//   very-special: F = h(z^1, ..., z^n) / z^0          for a cubic form h

#include <cmath>

#include "specgeom/core.hpp"
#include "specgeom/cubic.hpp"

namespace specgeom {

struct PrepotentialModel {
  enum class Kind { quadratic, very_special };

  Kind kind = Kind::quadratic;
  int n = 0;  // base complex dimension; z lives in C^{n+1}
  CubicForm cubic;

  static PrepotentialModel quadratic_model(int n) {
    if (n < 0) throw ValidationError("quadratic model needs n >= 0");
    PrepotentialModel m;
    m.kind = Kind::quadratic;
    m.n = n;
    return m;
  }

  static PrepotentialModel very_special_model(CubicForm h) {
    PrepotentialModel m;
    m.kind = Kind::very_special;
    m.n = h.n();
    m.cubic = std::move(h);
    return m;
  }
};

struct PrepotentialJet {
  CVec z;        // n+1
  Complex F{};
  CVec F_I;      // n+1
  CMat F_IJ;     // symmetric
  CTensor3 F_IJK;  // symmetric
};

inline PrepotentialJet eval_jet(const PrepotentialModel& m, const CVec& z) {
  const int n = m.n;
  if (z.size() != n + 1) throw PreconditionError("eval_jet: z has wrong dimension");
  PrepotentialJet jet;
  jet.z = z;
  jet.F_I = CVec::Zero(n + 1);
  jet.F_IJ = CMat::Zero(n + 1, n + 1);
  jet.F_IJK = CTensor3(n + 1);

  if (m.kind == PrepotentialModel::Kind::quadratic) {
    const Complex i_(0.0, 1.0);
    Complex q = z[0] * z[0];
    for (int mu = 1; mu <= n; ++mu) q -= z[mu] * z[mu];
    jet.F = 0.5 * i_ * q;
    jet.F_I[0] = i_ * z[0];
    jet.F_IJ(0, 0) = i_;
    for (int mu = 1; mu <= n; ++mu) {
      jet.F_I[mu] = -i_ * z[mu];
      jet.F_IJ(mu, mu) = -i_;
    }
    return jet;
  }

  const Complex u = z[0];
  if (u == 0.0) throw DomainError("very-special prepotential: z^0 = 0");
  const CVec w = z.tail(n);
  const Complex h = m.cubic.value<Complex>(w);
  const CVec hg = m.cubic.grad<Complex>(w);
  const CMat hh = m.cubic.hessian<Complex>(w);

  const Complex u2 = u * u, u3 = u2 * u, u4 = u3 * u;
  jet.F = h / u;
  jet.F_I[0] = -h / u2;
  jet.F_IJ(0, 0) = 2.0 * h / u3;
  jet.F_IJK(0, 0, 0) = -6.0 * h / u4;
  for (int a = 1; a <= n; ++a) {
    jet.F_I[a] = hg[a - 1] / u;
    jet.F_IJ(0, a) = jet.F_IJ(a, 0) = -hg[a - 1] / u2;
    jet.F_IJK(0, 0, a) = jet.F_IJK(0, a, 0) = jet.F_IJK(a, 0, 0) = 2.0 * hg[a - 1] / u3;
    for (int b = 1; b <= n; ++b) {
      jet.F_IJ(a, b) = hh(a - 1, b - 1) / u;
      jet.F_IJK(0, a, b) = jet.F_IJK(a, 0, b) = jet.F_IJK(a, b, 0) =
          -hh(a - 1, b - 1) / u2;
      for (int c = 1; c <= n; ++c) {
        jet.F_IJK(a, b, c) = m.cubic.coeff(a - 1, b - 1, c - 1) / u;
      }
    }
  }
  return jet;
}

struct SpecialMatrices {
  PrepotentialJet jet;
  Mat N;        // 2 Im F_IJ, signature (1, n)
  double f = 0.0;  // sum N_IJ z^I zbar^J, positive on the cone
  CMat scriptN;    // R + iI
  Mat R;
  Mat I;        // positive definite
  Mat Hhat;     // 2n+2 square, positive definite, p-ordering (zt_0.., zeta^0..)
};

namespace detail {

constexpr double kSignatureTol = 1e-10;

inline void check_signature_1n(const Mat& N) {
  Eigen::SelfAdjointEigenSolver<Mat> es(N, Eigen::EigenvaluesOnly);
  const Vec ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  int positive = 0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) < kSignatureTol * scale) {
      throw ModelViolationError("N is near-degenerate, signature unreliable");
    }
    if (ev[i] > 0.0) ++positive;
  }
  if (positive != 1) {
    throw ModelViolationError("N does not have signature (1, n): " +
                              std::to_string(positive) + " positive eigenvalues");
  }
}

}  // namespace detail

inline SpecialMatrices special_matrices(const PrepotentialModel& m, const CVec& z) {
  SpecialMatrices sm;
  sm.jet = eval_jet(m, z);
  const int d = m.n + 1;

  sm.N = 2.0 * sm.jet.F_IJ.imag();
  sm.N = 0.5 * (sm.N + sm.N.transpose()).eval();
  detail::check_signature_1n(sm.N);

  const Complex fc = (z.transpose() * sm.N.cast<Complex>() * z.conjugate())(0, 0);
  sm.f = fc.real();
  if (!(sm.f > 0.0)) {
    throw DomainError("point lies outside the cone: f = " + std::to_string(sm.f));
  }

  const CVec Nz = sm.N.cast<Complex>() * z;
  const Complex zNz = (z.transpose() * sm.N.cast<Complex>() * z)(0, 0);
  if (std::abs(zNz) < 1e-14 * sm.N.cwiseAbs().maxCoeff() * z.squaredNorm()) {
    throw ModelViolationError("z^T N z vanishes, scriptN undefined here");
  }
  sm.scriptN = sm.jet.F_IJ.conjugate() +
               Complex(0.0, 1.0) * (Nz * Nz.transpose()) / zNz;
  sm.scriptN = 0.5 * (sm.scriptN + sm.scriptN.transpose()).eval();
  sm.R = sm.scriptN.real();
  sm.I = sm.scriptN.imag();

  Eigen::LLT<Mat> llt(sm.I);
  if (llt.info() != Eigen::Success) {
    throw ModelViolationError("Im(scriptN) is not positive definite (bad domain point)");
  }
  const Mat Iinv = llt.solve(Mat::Identity(d, d));

  sm.Hhat.resize(2 * d, 2 * d);
  sm.Hhat.topLeftCorner(d, d) = Iinv;
  sm.Hhat.topRightCorner(d, d) = Iinv * sm.R;
  sm.Hhat.bottomLeftCorner(d, d) = sm.R * Iinv;
  sm.Hhat.bottomRightCorner(d, d) = sm.I + sm.R * Iinv * sm.R;
  sm.Hhat = 0.5 * (sm.Hhat + sm.Hhat.transpose()).eval();
  return sm;
}

// f(z) = sum N_IJ z^I zbar^J without the full matrix bundle.
inline double cone_function(const PrepotentialModel& m, const CVec& z) {
  const PrepotentialJet jet = eval_jet(m, z);
  const Mat N = 2.0 * jet.F_IJ.imag();
  return (z.transpose() * N.cast<Complex>() * z.conjugate())(0, 0).real();
}

}  // namespace specgeom
