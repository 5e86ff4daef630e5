#pragma once

// The supergravity c-map: assembly of the Ferrara-Sabharwal metric and its
// one-loop deformation g^c on the 4n+4 chart
//     (y^1..y^n, x^1..x^n, rho, phit, zt_0..zt_n, zeta^0..zeta^n),
// together with the frame one-forms theta_i, tau, A_I, eta_can, the three
// Kahler two-forms, the J_1-holomorphic coordinates (chi, X, w), the scaling
// map rho -> e^l rho, and the lower-bound gap used by the completeness probes.
//
// Deformed metric, on the positive-definite branch {rho > 0, rho > -2c}:
//   g^c = (r+c)/r gbar + (r+2c)/((r+c) 4r^2) drho^2
//       + (r+c)/((r+2c) 4r^2) (dphit + eta_can + c d^cK)^2
//       + 1/(2r) dp Hhat dp + 2c e^K / r^2 |X^I dzt_I + F_I dzeta^I|^2
// with eta_can = sum (zeta^I dzt_I - zt_I dzeta^I) and p = (zt_I, zeta^J).
//
// Convention notes, fixed by the internal consistency tests below
// (detect_conventions): d^c carries sign +1 with J(d_y) = d_x, and eta_can
// enters theta_1 with a plus sign,
//   theta_1 = -(1/4r)(dphit + (r+c) d^cK + eta_can),
// which is the unique choice under which -d theta_1 + 2 theta_2 ^ theta_3
// reproduces both the expanded omega_1 and g(J_1 ., .).

#include <cmath>

#include "specgeom/core.hpp"
#include "specgeom/diff.hpp"
#include "specgeom/prepotential.hpp"
#include "specgeom/special_kahler.hpp"

namespace specgeom {

struct QkPoint {
  CVec X;            // base point, inhomogeneous coordinates
  double rho = 1.0;
  double phit = 0.0;
  Vec zt;            // zt_I, I = 0..n
  Vec zeta;          // zeta^I
};

struct ChartLayout {
  int n = 0;
  Index dim() const { return 4 * n + 4; }
  Index y(int mu) const { return mu; }
  Index x(int mu) const { return n + mu; }
  Index rho() const { return 2 * n; }
  Index phit() const { return 2 * n + 1; }
  Index zt(int I) const { return 2 * n + 2 + I; }
  Index zeta(int I) const { return 3 * n + 3 + I; }
};

inline Vec qk_to_chart(const QkPoint& q) {
  const int n = static_cast<int>(q.X.size());
  const ChartLayout L{n};
  Vec p(L.dim());
  p.head(2 * n) = psk_real_chart(q.X);
  p[L.rho()] = q.rho;
  p[L.phit()] = q.phit;
  p.segment(L.zt(0), n + 1) = q.zt;
  p.segment(L.zeta(0), n + 1) = q.zeta;
  return p;
}

inline QkPoint qk_from_chart(int n, const Vec& p) {
  const ChartLayout L{n};
  QkPoint q;
  q.X = psk_from_real_chart(p.head(2 * n));
  q.rho = p[L.rho()];
  q.phit = p[L.phit()];
  q.zt = p.segment(L.zt(0), n + 1);
  q.zeta = p.segment(L.zeta(0), n + 1);
  return q;
}

// ---------------------------------------------------------------------------
// Signature branches of the deformed metric in (c, rho)

enum class MetricBranch { pos_def, sig_4n_4, sig_4_4n, outside };

inline MetricBranch domain_classify(double c, double rho) {
  if (rho > 0.0 && rho > -2.0 * c) return MetricBranch::pos_def;
  if (-c < rho && rho < -2.0 * c) return MetricBranch::sig_4n_4;
  if (-c < rho && rho < 0.0) return MetricBranch::sig_4_4n;
  return MetricBranch::outside;
}

inline const char* branch_name(MetricBranch b) {
  switch (b) {
    case MetricBranch::pos_def: return "positive-definite(4n+4,0)";
    case MetricBranch::sig_4n_4: return "signature(4n,4)";
    case MetricBranch::sig_4_4n: return "signature(4,4n)";
    default: return "outside";
  }
}

// ---------------------------------------------------------------------------
// Shared covector pieces

namespace detail {

inline Vec eta_can_covector(const ChartLayout& L, const QkPoint& q) {
  Vec eta = Vec::Zero(L.dim());
  for (int I = 0; I <= L.n; ++I) {
    eta[L.zt(I)] = q.zeta[I];
    eta[L.zeta(I)] = -q.zt[I];
  }
  return eta;
}

inline Vec embed_base_covector(const ChartLayout& L, const Vec& base) {
  Vec v = Vec::Zero(L.dim());
  v.head(2 * L.n) = base;
  return v;
}

// sum_I X^I dzt_I + F_I dzeta^I (equivalently sum X^I A_I by homogeneity).
inline CVec pairing_covector(const ChartLayout& L, const PrepotentialJet& jet) {
  CVec nu = CVec::Zero(L.dim());
  for (int I = 0; I <= L.n; ++I) {
    nu[L.zt(I)] = jet.z[I];
    nu[L.zeta(I)] = jet.F_I[I];
  }
  return nu;
}

inline std::vector<CVec> a_covectors(const ChartLayout& L, const PrepotentialJet& jet) {
  std::vector<CVec> A(static_cast<std::size_t>(L.n) + 1);
  for (int I = 0; I <= L.n; ++I) {
    CVec a = CVec::Zero(L.dim());
    a[L.zt(I)] = 1.0;
    for (int J = 0; J <= L.n; ++J) a[L.zeta(J)] = jet.F_IJ(I, J);
    A[static_cast<std::size_t>(I)] = a;
  }
  return A;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Metric assemblies

inline Mat fs_metric(const PrepotentialModel& m, const QkPoint& q) {
  const ChartLayout L{m.n};
  if (!(q.rho > 0.0)) throw DomainError("Ferrara-Sabharwal metric needs rho > 0");
  const SpecialMatrices sm = special_matrices(m, homogeneous(q.X));
  Mat g = Mat::Zero(L.dim(), L.dim());
  if (m.n > 0) g.topLeftCorner(2 * m.n, 2 * m.n) = base_metric(m, q.X);
  const double r2inv = 0.25 / (q.rho * q.rho);
  g(L.rho(), L.rho()) += r2inv;
  Vec theta0 = detail::eta_can_covector(L, q);
  theta0[L.phit()] += 1.0;
  g += r2inv * (theta0 * theta0.transpose());
  g.block(L.zt(0), L.zt(0), 2 * m.n + 2, 2 * m.n + 2) += (0.5 / q.rho) * sm.Hhat;
  return g;
}

inline Mat deformed_fs_metric(const PrepotentialModel& m, double c, const QkPoint& q,
                              int dc_sign = +1) {
  const ChartLayout L{m.n};
  if (domain_classify(c, q.rho) != MetricBranch::pos_def) {
    throw DomainError("deformed metric: (c, rho) outside the positive-definite branch");
  }
  const SpecialMatrices sm = special_matrices(m, homogeneous(q.X));
  Mat g = Mat::Zero(L.dim(), L.dim());
  if (m.n > 0) {
    g.topLeftCorner(2 * m.n, 2 * m.n) =
        ((q.rho + c) / q.rho) * base_metric(m, q.X);
  }
  const double r2inv = 0.25 / (q.rho * q.rho);
  g(L.rho(), L.rho()) += r2inv * ((q.rho + 2.0 * c) / (q.rho + c));

  Vec theta = detail::eta_can_covector(L, q);
  theta[L.phit()] += 1.0;
  if (c != 0.0) {
    theta += c * detail::embed_base_covector(L, dc_potential(m, q.X, dc_sign));
  }
  g += r2inv * ((q.rho + c) / (q.rho + 2.0 * c)) * (theta * theta.transpose());

  g.block(L.zt(0), L.zt(0), 2 * m.n + 2, 2 * m.n + 2) += (0.5 / q.rho) * sm.Hhat;

  if (c != 0.0) {
    const CVec nu = detail::pairing_covector(L, sm.jet);
    g += (2.0 * c / (q.rho * q.rho)) * (1.0 / sm.f) * covector_abs2(nu);
  }

  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) {
    throw Error("deformed metric assembly is not positive definite (convention bug?)");
  }
  return g;
}

// Explicit closed form of the deformed metric over the quadratic model
// (complex hyperbolic base), written in the w-coordinates
//   w_0 = (zt_0 + i zeta^0)/2,   w_mu = (zt_mu - i zeta^mu)/2.
inline Mat chn_closed_form(int n, double c, const QkPoint& q) {
  const ChartLayout L{n};
  if (domain_classify(c, q.rho) != MetricBranch::pos_def) {
    throw DomainError("closed form: (c, rho) outside the positive-definite branch");
  }
  const double D = 1.0 - q.X.squaredNorm();
  if (!(D > 0.0)) throw DomainError("closed form needs ||X|| < 1");
  const double r = q.rho;

  std::vector<CVec> dX(static_cast<std::size_t>(n));
  for (int mu = 0; mu < n; ++mu) {
    CVec v = CVec::Zero(L.dim());
    v[L.y(mu)] = 1.0;
    v[L.x(mu)] = Complex(0.0, 1.0);
    dX[static_cast<std::size_t>(mu)] = v;
  }
  std::vector<CVec> dw(static_cast<std::size_t>(n) + 1);
  std::vector<Complex> w(static_cast<std::size_t>(n) + 1);
  {
    CVec v = CVec::Zero(L.dim());
    v[L.zt(0)] = 0.5;
    v[L.zeta(0)] = Complex(0.0, 0.5);
    dw[0] = v;
    w[0] = 0.5 * Complex(q.zt[0], q.zeta[0]);
  }
  for (int mu = 1; mu <= n; ++mu) {
    CVec v = CVec::Zero(L.dim());
    v[L.zt(mu)] = 0.5;
    v[L.zeta(mu)] = Complex(0.0, -0.5);
    dw[static_cast<std::size_t>(mu)] = v;
    w[static_cast<std::size_t>(mu)] = 0.5 * Complex(q.zt[mu], -q.zeta[mu]);
  }

  Mat g = Mat::Zero(L.dim(), L.dim());

  // base block
  CVec S = CVec::Zero(L.dim());
  Mat sum_dXdX = Mat::Zero(L.dim(), L.dim());
  for (int mu = 0; mu < n; ++mu) {
    sum_dXdX += covector_abs2(dX[static_cast<std::size_t>(mu)]);
    S += std::conj(q.X[mu]) * dX[static_cast<std::size_t>(mu)];
  }
  g += ((r + c) / r) * (1.0 / D) * (sum_dXdX + (1.0 / D) * covector_abs2(S));

  g(L.rho(), L.rho()) += 0.25 / (r * r) * ((r + 2.0 * c) / (r + c));

  Mat wblock = -covector_abs2(dw[0]);
  for (int mu = 1; mu <= n; ++mu) wblock += covector_abs2(dw[static_cast<std::size_t>(mu)]);
  g += (2.0 / r) * wblock;

  CVec u = dw[0];
  for (int mu = 1; mu <= n; ++mu) u += q.X[mu - 1] * dw[static_cast<std::size_t>(mu)];
  g += ((r + c) / (r * r)) * (4.0 / D) * covector_abs2(u);

  CVec wdw = std::conj(w[0]) * dw[0];
  for (int mu = 1; mu <= n; ++mu) {
    wdw -= std::conj(w[static_cast<std::size_t>(mu)]) * dw[static_cast<std::size_t>(mu)];
  }
  Vec xi = Vec::Zero(L.dim());
  xi[L.phit()] = 1.0;
  xi += -4.0 * wdw.imag();
  if (c != 0.0) xi += (2.0 * c / D) * S.imag();
  g += 0.25 / (r * r) * ((r + c) / (r + 2.0 * c)) * (xi * xi.transpose());
  return g;
}

// ---------------------------------------------------------------------------
// Frame one-forms

struct FrameForms {
  Vec theta1, theta2, theta3;
  CVec tau;
  std::vector<CVec> A;
  Vec eta_can;
};

inline FrameForms frame_forms(const PrepotentialModel& m, double c, const QkPoint& q,
                              int dc_sign = +1) {
  const ChartLayout L{m.n};
  if (!(q.rho > 0.0) || !(q.rho + c > 0.0)) {
    throw DomainError("frame forms need rho > 0 and rho + c > 0");
  }
  const SpecialMatrices sm = special_matrices(m, homogeneous(q.X));
  FrameForms ff;
  ff.eta_can = detail::eta_can_covector(L, q);
  const Vec dc = (m.n > 0)
                     ? detail::embed_base_covector(L, dc_potential(m, q.X, dc_sign))
                     : Vec::Zero(L.dim());

  Vec inner = ff.eta_can + (q.rho + c) * dc;
  inner[L.phit()] += 1.0;
  ff.theta1 = -(0.25 / q.rho) * inner;

  const CVec nu = detail::pairing_covector(L, sm.jet);
  const CVec psi =
      Complex(0.0, 1.0) * (std::sqrt(q.rho + c) / q.rho) / std::sqrt(sm.f) * nu;
  ff.theta2 = psi.real();
  ff.theta3 = psi.imag();

  CVec tau = (ff.eta_can + c * dc).cast<Complex>();
  tau[L.phit()] += 1.0;
  tau[L.rho()] += Complex(0.0, (q.rho + 2.0 * c) / (q.rho + c));
  ff.tau = tau;

  ff.A = detail::a_covectors(L, sm.jet);
  return ff;
}

// ---------------------------------------------------------------------------
// Kahler two-forms

struct KahlerForms {
  Mat omega1, omega2, omega3;
};

// omega_i = -d theta_i + 2 theta_j ^ theta_k, exterior derivatives numerical.
inline KahlerForms kahler_forms(const PrepotentialModel& m, double c, const QkPoint& q,
                                int dc_sign = +1) {
  const ChartLayout L{m.n};
  const Index D = L.dim();
  auto stacked = [&](const Vec& p) -> Mat {
    const FrameForms ff = frame_forms(m, c, qk_from_chart(m.n, p), dc_sign);
    Mat T(3, D);
    T.row(0) = ff.theta1.transpose();
    T.row(1) = ff.theta2.transpose();
    T.row(2) = ff.theta3.transpose();
    return T;
  };
  std::vector<Mat> dT(static_cast<std::size_t>(D));
  const Vec p = qk_to_chart(q);
  for (Index i = 0; i < D; ++i) dT[static_cast<std::size_t>(i)] = matrix_partial(stacked, p, i);

  auto dtheta = [&](int row) {
    Mat w(D, D);
    for (Index i = 0; i < D; ++i)
      for (Index j = 0; j < D; ++j)
        w(i, j) = dT[static_cast<std::size_t>(i)](row, j) -
                  dT[static_cast<std::size_t>(j)](row, i);
    return w;
  };

  const FrameForms ff = frame_forms(m, c, q, dc_sign);
  KahlerForms kf;
  kf.omega1 = -dtheta(0) + 2.0 * wedge(ff.theta2, ff.theta3);
  kf.omega2 = -dtheta(1) + 2.0 * wedge(ff.theta3, ff.theta1);
  kf.omega3 = -dtheta(2) + 2.0 * wedge(ff.theta1, ff.theta2);
  return kf;
}

// Expanded route for omega_1:
//   omega_1 = (r+c)/(4r) dd^cK + (i/2)(r+c)/((r+2c)4r^2) tau ^ taubar
//           - (i/2)(1/r) N^{IJ} A_I ^ Abar_J
//           + (i/2)(2r+2c)/r^2 e^K (X^I A_I) ^ (Xbar^J Abar_J).
inline Mat omega1_expanded(const PrepotentialModel& m, double c, const QkPoint& q,
                           int dc_sign = +1) {
  const ChartLayout L{m.n};
  const Index D = L.dim();
  const SpecialMatrices sm = special_matrices(m, homogeneous(q.X));
  const FrameForms ff = frame_forms(m, c, q, dc_sign);
  const double r = q.rho;

  Mat w = Mat::Zero(D, D);
  if (m.n > 0) {
    OneFormField dcf = [&](const Vec& base_p) {
      return dc_potential(m, psk_from_real_chart(base_p), dc_sign);
    };
    const Mat ddc = exterior_derivative(dcf, psk_real_chart(q.X));
    w.topLeftCorner(2 * m.n, 2 * m.n) = ((r + c) / (4.0 * r)) * ddc;
  }

  const Complex ih(0.0, 0.5);
  CMat cw = ih * (0.25 / (r * r)) * ((r + c) / (r + 2.0 * c)) *
            wedge(ff.tau, ff.tau.conjugate().eval());

  const Mat Ninv = sm.N.inverse();
  for (int I = 0; I <= m.n; ++I) {
    for (int J = 0; J <= m.n; ++J) {
      cw -= ih * (1.0 / r) * Ninv(I, J) *
            wedge(ff.A[static_cast<std::size_t>(I)],
                  ff.A[static_cast<std::size_t>(J)].conjugate().eval());
    }
  }

  const CVec nu = detail::pairing_covector(L, sm.jet);
  cw += ih * ((2.0 * r + 2.0 * c) / (r * r)) * (1.0 / sm.f) *
        wedge(nu, nu.conjugate().eval());

  if (cw.imag().cwiseAbs().maxCoeff() > 1e-9 * (1.0 + cw.real().cwiseAbs().maxCoeff())) {
    throw Error("omega1_expanded: unexpected imaginary residue");
  }
  return w + cw.real();
}

// Frame-form expression of the metric itself:
//   g^c = (r+c)/r gbar + (r+c)/((r+2c)4r^2)|tau|^2 - (1/r) N^{IJ} A_I Abar_J
//       + (2r+2c)/r^2 e^K |X^I A_I|^2.
inline Mat frame_form_metric(const PrepotentialModel& m, double c, const QkPoint& q,
                             int dc_sign = +1) {
  const ChartLayout L{m.n};
  const Index D = L.dim();
  const SpecialMatrices sm = special_matrices(m, homogeneous(q.X));
  const FrameForms ff = frame_forms(m, c, q, dc_sign);
  const double r = q.rho;

  Mat g = Mat::Zero(D, D);
  if (m.n > 0) {
    g.topLeftCorner(2 * m.n, 2 * m.n) = ((r + c) / r) * base_metric(m, q.X);
  }
  g += (0.25 / (r * r)) * ((r + c) / (r + 2.0 * c)) * covector_abs2(ff.tau);

  const Mat Ninv = sm.N.inverse();
  for (int I = 0; I <= m.n; ++I) {
    const Vec reI = ff.A[static_cast<std::size_t>(I)].real();
    const Vec imI = ff.A[static_cast<std::size_t>(I)].imag();
    for (int J = 0; J <= m.n; ++J) {
      const Vec reJ = ff.A[static_cast<std::size_t>(J)].real();
      const Vec imJ = ff.A[static_cast<std::size_t>(J)].imag();
      g -= (1.0 / r) * Ninv(I, J) * (sym_outer(reI, reJ) + sym_outer(imI, imJ));
    }
  }

  const CVec nu = detail::pairing_covector(L, sm.jet);
  g += ((2.0 * r + 2.0 * c) / (r * r)) * (1.0 / sm.f) * covector_abs2(nu);
  return g;
}

// ---------------------------------------------------------------------------
// J_1-holomorphic coordinates

struct HoloCoords {
  Complex chi{};
  CVec X;
  CVec w;
};

inline HoloCoords holomorphic_coords(const PrepotentialModel& m, double c,
                                     const QkPoint& q) {
  if (!(q.rho + c > 0.0)) throw DomainError("holomorphic coords need rho + c > 0");
  const PrepotentialJet jet = eval_jet(m, homogeneous(q.X));
  HoloCoords hc;
  hc.X = q.X;
  hc.w = CVec(m.n + 1);
  for (int I = 0; I <= m.n; ++I) {
    Complex acc{};
    for (int J = 0; J <= m.n; ++J) acc += jet.F_IJ(I, J) * q.zeta[J];
    hc.w[I] = 0.5 * (q.zt[I] + acc);
  }
  const double K = kahler_potential(m, q.X);
  Complex chi(q.phit, q.rho + c * (K + std::log(q.rho + c)));
  for (int I = 0; I <= m.n; ++I) {
    chi -= q.zeta[I] * q.zt[I];
    for (int J = 0; J <= m.n; ++J) chi -= q.zeta[I] * jet.F_IJ(I, J) * q.zeta[J];
  }
  hc.chi = chi;
  return hc;
}

// Rows of the (2n+2) x (4n+4) matrix of differentials (dchi, dX^mu, dw_I),
// computed numerically from the coordinate functions.
inline CMat holo_differentials(const PrepotentialModel& m, double c, const QkPoint& q) {
  const ChartLayout L{m.n};
  const Index D = L.dim();
  const int rows = 2 * m.n + 2;
  auto component = [&](int k, const Vec& p) -> Complex {
    const HoloCoords hc = holomorphic_coords(m, c, qk_from_chart(m.n, p));
    if (k == 0) return hc.chi;
    if (k <= m.n) return hc.X[k - 1];
    return hc.w[k - 1 - m.n];
  };
  CMat phi(rows, D);
  const Vec p = qk_to_chart(q);
  for (int k = 0; k < rows; ++k) {
    ScalarField re = [&](const Vec& pp) { return component(k, pp).real(); };
    ScalarField im = [&](const Vec& pp) { return component(k, pp).imag(); };
    const Vec gre = gradient(re, p);
    const Vec gim = gradient(im, p);
    for (Index j = 0; j < D; ++j) phi(k, j) = Complex(gre[j], gim[j]);
  }
  return phi;
}

// The almost complex structure J_1 with (dchi, dX, dw) as (1,0)-forms:
// solve [phi; conj(phi)] J = [i phi; -i conj(phi)].
inline Mat complex_structure_from_holo(const PrepotentialModel& m, double c,
                                       const QkPoint& q) {
  const CMat phi = holo_differentials(m, c, q);
  const Index D = phi.cols();
  CMat M(D, D), rhs(D, D);
  M.topRows(phi.rows()) = phi;
  M.bottomRows(phi.rows()) = phi.conjugate();
  rhs.topRows(phi.rows()) = Complex(0.0, 1.0) * phi;
  rhs.bottomRows(phi.rows()) = Complex(0.0, -1.0) * phi.conjugate();
  const CMat J = M.partialPivLu().solve(rhs);
  if (J.imag().cwiseAbs().maxCoeff() > 1e-7 * (1.0 + J.real().cwiseAbs().maxCoeff())) {
    throw Error("complex structure from holomorphic coordinates is not real");
  }
  return J.real();
}

// Oracle route for omega_1: g(J_1 ., .) with J_1 from the holomorphic chart.
inline Mat omega1_from_holo(const PrepotentialModel& m, double c, const QkPoint& q,
                            int dc_sign = +1) {
  const Mat J = complex_structure_from_holo(m, c, q);
  const Mat g = deformed_fs_metric(m, c, q, dc_sign);
  return J.transpose() * g;
}

// ---------------------------------------------------------------------------
// Scaling map (m, rho, phit, zt, zeta) -> (m, e^l rho, e^l phit, e^{l/2} zt,
// e^{l/2} zeta), pulling g^c back to g^{e^-l c}.

inline QkPoint scaling_map(double lambda, const QkPoint& q) {
  QkPoint out = q;
  out.rho = std::exp(lambda) * q.rho;
  out.phit = std::exp(lambda) * q.phit;
  out.zt = std::exp(0.5 * lambda) * q.zt;
  out.zeta = std::exp(0.5 * lambda) * q.zeta;
  return out;
}

inline Vec scaling_jacobian_diagonal(int n, double lambda) {
  const ChartLayout L{n};
  Vec d = Vec::Ones(L.dim());
  d[L.rho()] = std::exp(lambda);
  d[L.phit()] = std::exp(lambda);
  for (int I = 0; I <= n; ++I) {
    d[L.zt(I)] = std::exp(0.5 * lambda);
    d[L.zeta(I)] = std::exp(0.5 * lambda);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Lower-bound gap: min eigenvalue of g^c - (1/2) k eps/(k eps + c) g^0 at q,
// nonnegative (up to tolerance) whenever rho(q) > eps and
// gbar >= (k/4)(d^cK)^2 holds at the base point.

inline double lower_bound_gap(const PrepotentialModel& m, double c, double eps,
                              double k, const QkPoint& q) {
  if (!(q.rho > eps)) {
    throw PreconditionError("lower_bound_gap requires rho > eps");
  }
  const Mat gc = deformed_fs_metric(m, c, q);
  const Mat g0 = fs_metric(m, q);
  const double delta = 0.5 * k * eps / (k * eps + c);
  Eigen::SelfAdjointEigenSolver<Mat> es(gc - delta * g0, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Convention detection: the d^c sign s is selected so that the expanded
// omega_1 agrees with g(J_1 ., .); sigma is the constant in J_1 J_2 = sigma J_3.

struct Conventions {
  int dc_sign = +1;
  int sigma = +1;
  double omega1_residual = 0.0;   // for the selected sign
  double rejected_residual = 0.0; // for the discarded sign
};

inline Conventions detect_conventions(const PrepotentialModel& m, double c,
                                      const QkPoint& q) {
  auto residual = [&](int s) {
    const Mat a = omega1_expanded(m, c, q, s);
    const Mat b = omega1_from_holo(m, c, q, s);
    return max_abs(a - b) / (1.0 + max_abs(b));
  };
  const double rp = residual(+1);
  const double rm = residual(-1);
  Conventions conv;
  conv.dc_sign = (rp <= rm) ? +1 : -1;
  conv.omega1_residual = std::min(rp, rm);
  conv.rejected_residual = std::max(rp, rm);

  const Mat g = deformed_fs_metric(m, c, q, conv.dc_sign);
  const Mat ginv = g.inverse();
  const KahlerForms kf = kahler_forms(m, c, q, conv.dc_sign);
  const Mat J1 = ginv * kf.omega1;
  const Mat J2 = ginv * kf.omega2;
  const Mat J3 = ginv * kf.omega3;
  const double dot = (J1 * J2).cwiseProduct(J3).sum();
  conv.sigma = dot >= 0.0 ? +1 : -1;
  return conv;
}

// Metric fields over the full chart / the base chart, for curvature and
// geodesic work.
inline MetricField deformed_fs_field(const PrepotentialModel& m, double c,
                                     int dc_sign = +1) {
  const ChartLayout L{m.n};
  return MetricField{L.dim(), [m, c, dc_sign](const Vec& p) {
                       return deformed_fs_metric(m, c, qk_from_chart(m.n, p), dc_sign);
                     }};
}

inline MetricField base_metric_field(const PrepotentialModel& m) {
  return MetricField{2 * m.n, [m](const Vec& p) {
                       return base_metric(m, psk_from_real_chart(p));
                     }};
}

}  // namespace specgeom
