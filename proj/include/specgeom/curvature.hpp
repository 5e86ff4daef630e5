#pragma once

// Riemannian curvature of an arbitrary symmetric MatrixField by repeated
// numerical differentiation of the metric itself (nested Richardson stencils,
// never stored Christoffel grids):
//   Gamma^i_jk = 1/2 g^il (d_j g_lk + d_k g_jl - d_l g_jk)
//   R^i_jkl    = d_k Gamma^i_lj - d_l Gamma^i_kj
//              + Gamma^i_km Gamma^m_lj - Gamma^i_lm Gamma^m_kj
// plus Ricci, scalar, the full-contraction norm |Riem|^2, the covariant
// derivative norm ||nabla R|| and the Einstein residual max|Ric - (scal/d) g|.
//
// Quoted tolerances assume coordinates of magnitude <= 5 and metric condition
// number <= 1e4; the report carries the condition number so that failures
// outside that envelope are diagnosable.

#include <cmath>
#include <optional>

#include "specgeom/core.hpp"
#include "specgeom/diff.hpp"

namespace specgeom {

namespace detail {

// nabla R differentiates the (already twice differentiated) Riemann tensor;
// a larger step keeps the amplified rounding noise of the nested stencils
// below the truncation budget.
constexpr double kNablaRStepScale = 1e-2;
constexpr double kMaxCondition = 1e12;

inline Mat inverse_with_condition(const Mat& g, double* condition) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const Vec ev = es.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.cwiseAbs().maxCoeff();
  const double cond = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
  if (condition) *condition = cond;
  if (!(lo > 0.0) || cond > kMaxCondition) {
    throw SingularMatrixError("metric not invertible, condition number " +
                              std::to_string(cond));
  }
  return es.eigenvectors() * ev.cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace detail

inline Tensor3 christoffel(const MetricField& gf, const Vec& p) {
  const Index d = gf.dim;
  const Mat g = fd::checked_eval(gf.eval, p);
  const Mat ginv = detail::inverse_with_condition(g, nullptr);
  std::vector<Mat> dg(static_cast<std::size_t>(d));
  for (Index k = 0; k < d; ++k) dg[static_cast<std::size_t>(k)] = matrix_partial(gf.eval, p, k);

  Tensor3 gamma(d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = j; k < d; ++k) {
        double acc = 0.0;
        for (Index l = 0; l < d; ++l) {
          acc += ginv(i, l) * (dg[static_cast<std::size_t>(j)](l, k) +
                               dg[static_cast<std::size_t>(k)](j, l) -
                               dg[static_cast<std::size_t>(l)](j, k));
        }
        gamma(i, j, k) = 0.5 * acc;
        gamma(i, k, j) = gamma(i, j, k);
      }
  return gamma;
}

namespace detail {

inline Tensor4 riemann_up(const MetricField& gf, const Vec& p, const Tensor3& gamma) {
  const Index d = gf.dim;
  std::vector<Tensor3> dgamma(static_cast<std::size_t>(d));
  for (Index k = 0; k < d; ++k) {
    const double h = fd::base_step(p[k]);
    auto at = [&](double dx) { return christoffel(gf, fd::shifted(p, k, dx)); };
    auto central = [&](double s) {
      Tensor3 a = at(s), b = at(-s), out(d);
      for (std::size_t t = 0; t < out.size(); ++t)
        out.data()[t] = (a.data()[t] - b.data()[t]) / (2.0 * s);
      return out;
    };
    Tensor3 c1 = central(0.5 * h), c2 = central(h), out(d);
    for (std::size_t t = 0; t < out.size(); ++t)
      out.data()[t] = (4.0 * c1.data()[t] - c2.data()[t]) / 3.0;
    dgamma[static_cast<std::size_t>(k)] = out;
  }

  Tensor4 r(d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
          double acc = dgamma[static_cast<std::size_t>(k)](i, l, j) -
                       dgamma[static_cast<std::size_t>(l)](i, k, j);
          for (Index mm = 0; mm < d; ++mm) {
            acc += gamma(i, k, mm) * gamma(mm, l, j) - gamma(i, l, mm) * gamma(mm, k, j);
          }
          r(i, j, k, l) = acc;
        }
  return r;
}

inline Tensor4 lower_first(const Tensor4& rup, const Mat& g) {
  const Index d = rup.dim();
  Tensor4 r(d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
          double acc = 0.0;
          for (Index mm = 0; mm < d; ++mm) acc += g(i, mm) * rup(mm, j, k, l);
          r(i, j, k, l) = acc;
        }
  return r;
}

inline Tensor4 riemann_lower(const MetricField& gf, const Vec& p) {
  const Tensor3 gamma = christoffel(gf, p);
  const Tensor4 rup = riemann_up(gf, p, gamma);
  return lower_first(rup, fd::checked_eval(gf.eval, p));
}

// Raise one slot of a rank-4 tensor with ginv.
inline Tensor4 raise_slot(const Tensor4& t, const Mat& ginv, int slot) {
  const Index d = t.dim();
  Tensor4 out(d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
          double acc = 0.0;
          for (Index mm = 0; mm < d; ++mm) {
            switch (slot) {
              case 0: acc += ginv(i, mm) * t(mm, j, k, l); break;
              case 1: acc += ginv(j, mm) * t(i, mm, k, l); break;
              case 2: acc += ginv(k, mm) * t(i, j, mm, l); break;
              default: acc += ginv(l, mm) * t(i, j, k, mm); break;
            }
          }
          out(i, j, k, l) = acc;
        }
  return out;
}

}  // namespace detail

struct CurvatureOptions {
  bool with_nabla_r = true;
};

struct CurvatureReport {
  Vec point;
  Tensor3 christoffel;
  Tensor4 riemann_low;
  Mat ricci;
  double scalar = 0.0;
  double riem_norm2 = 0.0;
  std::optional<double> nabla_r_norm;
  double einstein_residual = 0.0;
  double metric_condition = 0.0;
  double riemann_symmetry_residual = 0.0;  // relative, pair/exchange symmetries
  double bianchi1_residual = 0.0;          // relative, first Bianchi identity
};

inline CurvatureReport curvature_report(const MetricField& gf, const Vec& p,
                                        const CurvatureOptions& opt = {}) {
  const Index d = gf.dim;
  CurvatureReport rep;
  rep.point = p;
  const Mat g = fd::checked_eval(gf.eval, p);
  const Mat ginv = detail::inverse_with_condition(g, &rep.metric_condition);

  rep.christoffel = christoffel(gf, p);
  const Tensor4 rup = detail::riemann_up(gf, p, rep.christoffel);
  rep.riemann_low = detail::lower_first(rup, g);
  const Tensor4& rl = rep.riemann_low;

  const double rscale = std::max(rl.max_abs(), 1e-300);
  double sym = 0.0, bianchi = 0.0;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
          sym = std::max(sym, std::abs(rl(i, j, k, l) + rl(j, i, k, l)));
          sym = std::max(sym, std::abs(rl(i, j, k, l) + rl(i, j, l, k)));
          sym = std::max(sym, std::abs(rl(i, j, k, l) - rl(k, l, i, j)));
          bianchi = std::max(
              bianchi, std::abs(rl(i, j, k, l) + rl(i, k, l, j) + rl(i, l, j, k)));
        }
  rep.riemann_symmetry_residual = sym / rscale;
  rep.bianchi1_residual = bianchi / rscale;

  rep.ricci.resize(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index l = 0; l < d; ++l) {
      double acc = 0.0;
      for (Index i = 0; i < d; ++i) acc += rup(i, j, i, l);
      rep.ricci(j, l) = acc;
    }
  rep.ricci = 0.5 * (rep.ricci + rep.ricci.transpose()).eval();
  rep.scalar = (ginv * rep.ricci).trace();

  Tensor4 rall = detail::raise_slot(rup, ginv, 1);
  rall = detail::raise_slot(rall, ginv, 2);
  rall = detail::raise_slot(rall, ginv, 3);
  double norm2 = 0.0;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) norm2 += rl(i, j, k, l) * rall(i, j, k, l);
  rep.riem_norm2 = norm2;

  rep.einstein_residual =
      (rep.ricci - (rep.scalar / static_cast<double>(d)) * g).cwiseAbs().maxCoeff();

  if (opt.with_nabla_r) {
    const Tensor3& gamma = rep.christoffel;
    Tensor5 nr(d);
    for (Index mcoord = 0; mcoord < d; ++mcoord) {
      const double h = fd::base_step(p[mcoord], detail::kNablaRStepScale);
      auto central = [&](double s) {
        Tensor4 a = detail::riemann_lower(gf, fd::shifted(p, mcoord, s));
        Tensor4 b = detail::riemann_lower(gf, fd::shifted(p, mcoord, -s));
        Tensor4 out(d);
        for (Index i = 0; i < d; ++i)
          for (Index j = 0; j < d; ++j)
            for (Index k = 0; k < d; ++k)
              for (Index l = 0; l < d; ++l)
                out(i, j, k, l) = (a(i, j, k, l) - b(i, j, k, l)) / (2.0 * s);
        return out;
      };
      const Tensor4 c1 = central(0.5 * h);
      const Tensor4 c2 = central(h);
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
          for (Index k = 0; k < d; ++k)
            for (Index l = 0; l < d; ++l) {
              double acc = (4.0 * c1(i, j, k, l) - c2(i, j, k, l)) / 3.0;
              for (Index pp = 0; pp < d; ++pp) {
                acc -= gamma(pp, mcoord, i) * rl(pp, j, k, l);
                acc -= gamma(pp, mcoord, j) * rl(i, pp, k, l);
                acc -= gamma(pp, mcoord, k) * rl(i, j, pp, l);
                acc -= gamma(pp, mcoord, l) * rl(i, j, k, pp);
              }
              nr(mcoord, i, j, k, l) = acc;
            }
    }
    // full contraction with five inverse metrics
    double n2 = 0.0;
    Tensor5 tmp(d);
    // raise the leading index first, then reuse rank-4 raising per m-slice
    for (Index mcoord = 0; mcoord < d; ++mcoord) {
      Tensor4 slice(d);
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
          for (Index k = 0; k < d; ++k)
            for (Index l = 0; l < d; ++l) slice(i, j, k, l) = nr(mcoord, i, j, k, l);
      Tensor4 up = detail::raise_slot(slice, ginv, 0);
      up = detail::raise_slot(up, ginv, 1);
      up = detail::raise_slot(up, ginv, 2);
      up = detail::raise_slot(up, ginv, 3);
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
          for (Index k = 0; k < d; ++k)
            for (Index l = 0; l < d; ++l) tmp(mcoord, i, j, k, l) = up(i, j, k, l);
    }
    for (Index ma = 0; ma < d; ++ma)
      for (Index mb = 0; mb < d; ++mb) {
        if (ginv(ma, mb) == 0.0) continue;
        double dot = 0.0;
        for (Index i = 0; i < d; ++i)
          for (Index j = 0; j < d; ++j)
            for (Index k = 0; k < d; ++k)
              for (Index l = 0; l < d; ++l) dot += nr(ma, i, j, k, l) * tmp(mb, i, j, k, l);
        n2 += ginv(ma, mb) * dot;
      }
    rep.nabla_r_norm = std::sqrt(std::max(0.0, n2));
  }
  return rep;
}

// Closed-form |Riem|^2 profile of the deformed metric over the n = 1 cubic
// model h = x^3 (the 8-dimensional family deforming G2*/SO(4)):
//   128 (528 c^7 + 2112 c^6 r + 3664 c^5 r^2 + 3568 c^4 r^3 + 2110 c^3 r^4
//        + 764 c^2 r^5 + 161 c r^6 + 17 r^7) / (3 (c+r) (2c+r)^6).
inline double riem_norm2_reference_cubic_n1(double c, double rho) {
  const double r = rho;
  const double num =
      528.0 * std::pow(c, 7) + 2112.0 * std::pow(c, 6) * r +
      3664.0 * std::pow(c, 5) * r * r + 3568.0 * std::pow(c, 4) * std::pow(r, 3) +
      2110.0 * std::pow(c, 3) * std::pow(r, 4) + 764.0 * c * c * std::pow(r, 5) +
      161.0 * c * std::pow(r, 6) + 17.0 * std::pow(r, 7);
  return 128.0 * num / (3.0 * (c + r) * std::pow(2.0 * c + r, 6));
}

}  // namespace specgeom
