#pragma once

// Numerical differentiation of scalar, one-form and matrix fields over real
// coordinate charts. Central differences with one Richardson elimination,
// base step h0 = 1e-3 * max(1, |x_i|) and the pair (h0, h0/2). Stencils
// always re-evaluate the field; callers must keep a margin of 4*h0 to any
// domain boundary because steps are never shrunk adaptively.

#include <cmath>
#include <functional>

#include "specgeom/core.hpp"

namespace specgeom {

using ScalarField = std::function<double(const Vec&)>;
using OneFormField = std::function<Vec(const Vec&)>;
using MatrixFn = std::function<Mat(const Vec&)>;

// A symmetric-matrix-valued field over a chart of the given dimension.
struct MatrixField {
  Index dim = 0;
  MatrixFn eval;
};

namespace fd {

constexpr double kBaseStepScale = 1e-3;

inline double base_step(double coord, double scale = kBaseStepScale) {
  return scale * std::max(1.0, std::abs(coord));
}

inline double checked_eval(const ScalarField& f, const Vec& p) {
  const double v = f(p);
  if (!std::isfinite(v)) {
    throw EvaluationError("non-finite field value at " + describe_point(p));
  }
  return v;
}

inline Vec checked_eval(const OneFormField& f, const Vec& p) {
  Vec v = f(p);
  if (!v.allFinite()) {
    throw EvaluationError("non-finite one-form value at " + describe_point(p));
  }
  return v;
}

inline Mat checked_eval(const MatrixFn& f, const Vec& p) {
  Mat v = f(p);
  if (!v.allFinite()) {
    throw EvaluationError("non-finite matrix value at " + describe_point(p));
  }
  return v;
}

inline Vec shifted(const Vec& p, Index i, double dx) {
  Vec q = p;
  q[i] += dx;
  return q;
}

// Richardson combination of a quantity D(h) with error expansion
// D(h) = D0 + a h^2 + O(h^4): uses the pair (h, h/2).
template <typename T>
T richardson(const std::function<T(double)>& d, double h) {
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace fd

// order 1: d f / dx_i.  order 2: d^2 f / dx_i dx_{i2} (i2 < 0 means i2 = i).
inline double partial_derivative(const ScalarField& f, const Vec& p, Index i,
                                 int order = 1, Index i2 = -1,
                                 double step_scale = fd::kBaseStepScale) {
  if (order != 1 && order != 2) {
    throw PreconditionError("partial_derivative: order must be 1 or 2");
  }
  const double hi = fd::base_step(p[i], step_scale);
  if (order == 1) {
    auto central = [&](double h) {
      return (fd::checked_eval(f, fd::shifted(p, i, h)) -
              fd::checked_eval(f, fd::shifted(p, i, -h))) /
             (2.0 * h);
    };
    return (4.0 * central(0.5 * hi) - central(hi)) / 3.0;
  }
  if (i2 < 0 || i2 == i) {
    const double f0 = fd::checked_eval(f, p);
    auto second = [&](double h) {
      return (fd::checked_eval(f, fd::shifted(p, i, h)) - 2.0 * f0 +
              fd::checked_eval(f, fd::shifted(p, i, -h))) /
             (h * h);
    };
    return (4.0 * second(0.5 * hi) - second(hi)) / 3.0;
  }
  const double hj = fd::base_step(p[i2], step_scale);
  auto cross = [&](double s) {
    const double a = s * hi, b = s * hj;
    auto at = [&](double da, double db) {
      Vec q = p;
      q[i] += da;
      q[i2] += db;
      return fd::checked_eval(f, q);
    };
    return (at(a, b) - at(a, -b) - at(-a, b) + at(-a, -b)) / (4.0 * a * b);
  };
  return (4.0 * cross(0.5) - cross(1.0)) / 3.0;
}

inline Vec gradient(const ScalarField& f, const Vec& p) {
  Vec g(p.size());
  for (Index i = 0; i < p.size(); ++i) g[i] = partial_derivative(f, p, i);
  return g;
}

inline Mat scalar_hessian(const ScalarField& f, const Vec& p) {
  const Index d = p.size();
  Mat h(d, d);
  for (Index i = 0; i < d; ++i) {
    h(i, i) = partial_derivative(f, p, i, 2);
    for (Index j = i + 1; j < d; ++j) {
      h(i, j) = partial_derivative(f, p, i, 2, j);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

// J(i, j) = d w_j / dx_i, one full covector evaluation per stencil node.
inline Mat oneform_jacobian(const OneFormField& w, const Vec& p) {
  const Index d = p.size();
  Mat jac(d, d);
  for (Index i = 0; i < d; ++i) {
    const double h = fd::base_step(p[i]);
    auto central = [&](double s) -> Vec {
      return (fd::checked_eval(w, fd::shifted(p, i, s)) -
              fd::checked_eval(w, fd::shifted(p, i, -s))) /
             (2.0 * s);
    };
    jac.row(i) = ((4.0 * central(0.5 * h) - central(h)) / 3.0).transpose();
  }
  return jac;
}

// (dw)_ij = d_i w_j - d_j w_i; antisymmetric by construction.
inline Mat exterior_derivative(const OneFormField& w, const Vec& p) {
  const Mat jac = oneform_jacobian(w, p);
  return jac - jac.transpose();
}

inline Mat matrix_partial(const MatrixFn& g, const Vec& p, Index i,
                          double step_scale = fd::kBaseStepScale) {
  const double h = fd::base_step(p[i], step_scale);
  auto central = [&](double s) -> Mat {
    return (fd::checked_eval(g, fd::shifted(p, i, s)) -
            fd::checked_eval(g, fd::shifted(p, i, -s))) /
           (2.0 * s);
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

// d of a 2-form given as an antisymmetric coefficient matrix field:
// (dw)_ijk = d_i w_jk - d_j w_ik + d_k w_ij.
inline Tensor3 exterior_derivative_2form(const MatrixFn& w, const Vec& p) {
  const Index d = p.size();
  std::vector<Mat> dw(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) dw[static_cast<std::size_t>(i)] = matrix_partial(w, p, i);
  Tensor3 out(d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        out(i, j, k) = dw[static_cast<std::size_t>(i)](j, k) -
                       dw[static_cast<std::size_t>(j)](i, k) +
                       dw[static_cast<std::size_t>(k)](i, j);
  return out;
}

}  // namespace specgeom
