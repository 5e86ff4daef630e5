#pragma once

// Common scalar/linear-algebra aliases, error taxonomy, dense tensors of
// rank 3-5 and a reproducible RNG. Everything downstream includes this.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace specgeom {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Index = Eigen::Index;

// A point of a real coordinate chart, stored in a fixed, documented ordering.
using ChartPoint = Vec;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point left the chart/model domain (outside cone, rho branch, ...).
struct DomainError : Error {
  using Error::Error;
};

// A field returned a non-finite value inside a stencil.
struct EvaluationError : Error {
  using Error::Error;
};

struct SingularMatrixError : Error {
  using Error::Error;
};

// Data violates a structural guarantee of the model (signature, definiteness).
struct ModelViolationError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// Bad user-supplied configuration.
struct ValidationError : Error {
  using Error::Error;
};

inline std::string describe_point(const Vec& p) {
  std::ostringstream os;
  os << "(";
  for (Index i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << p[i];
  }
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Small dense tensors (row-major, zero initialised)

template <typename T>
class Tensor3T {
 public:
  Tensor3T() = default;
  explicit Tensor3T(Index d) : d_(d), v_(static_cast<std::size_t>(d * d * d), T{}) {}

  T& operator()(Index i, Index j, Index k) { return v_[idx(i, j, k)]; }
  const T& operator()(Index i, Index j, Index k) const { return v_[idx(i, j, k)]; }

  Index dim() const { return d_; }
  T* data() { return v_.data(); }
  const T* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : v_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  std::size_t idx(Index i, Index j, Index k) const {
    return static_cast<std::size_t>((i * d_ + j) * d_ + k);
  }
  Index d_ = 0;
  std::vector<T> v_;
};

using Tensor3 = Tensor3T<double>;
using CTensor3 = Tensor3T<Complex>;

class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(Index d) : d_(d), v_(static_cast<std::size_t>(d * d * d * d), 0.0) {}

  double& operator()(Index i, Index j, Index k, Index l) { return v_[idx(i, j, k, l)]; }
  double operator()(Index i, Index j, Index k, Index l) const { return v_[idx(i, j, k, l)]; }

  Index dim() const { return d_; }
  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  std::size_t idx(Index i, Index j, Index k, Index l) const {
    return static_cast<std::size_t>(((i * d_ + j) * d_ + k) * d_ + l);
  }
  Index d_ = 0;
  std::vector<double> v_;
};

class Tensor5 {
 public:
  Tensor5() = default;
  explicit Tensor5(Index d)
      : d_(d), v_(static_cast<std::size_t>(d * d * d * d * d), 0.0) {}

  double& operator()(Index m, Index i, Index j, Index k, Index l) {
    return v_[idx(m, i, j, k, l)];
  }
  double operator()(Index m, Index i, Index j, Index k, Index l) const {
    return v_[idx(m, i, j, k, l)];
  }

  Index dim() const { return d_; }

 private:
  std::size_t idx(Index m, Index i, Index j, Index k, Index l) const {
    return static_cast<std::size_t>((((m * d_ + i) * d_ + j) * d_ + k) * d_ + l);
  }
  Index d_ = 0;
  std::vector<double> v_;
};

// ---------------------------------------------------------------------------
// Reproducible RNG. mt19937_64 is fully specified by the standard and the
// bits->double mapping below is ours, so streams are identical across
// platforms and appear verbatim in reports.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  double symmetric(double a) { return uniform(-a, a); }

  Vec uniform_vec(Index n, double lo, double hi) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Misc small helpers

inline Mat sym_outer(const Vec& a, const Vec& b) {
  return 0.5 * (a * b.transpose() + b * a.transpose());
}

// |nu|^2 of a complex covector as a real bilinear form: (Re nu)^2 + (Im nu)^2.
inline Mat covector_abs2(const CVec& nu) {
  const Vec re = nu.real();
  const Vec im = nu.imag();
  return re * re.transpose() + im * im.transpose();
}

// Coefficient matrix of a wedge a^b: M_ij = a_i b_j - a_j b_i, so that the
// 2-form is sum_{i<j} M_ij dx^i ^ dx^j and evaluates as u^T M v.
inline Mat wedge(const Vec& a, const Vec& b) {
  return a * b.transpose() - b * a.transpose();
}

inline CMat wedge(const CVec& a, const CVec& b) {
  return a * b.transpose() - b * a.transpose();
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

// FNV-1a, used to fingerprint configurations in reports.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace specgeom
