#pragma once

// Homogeneous cubic forms h in n real variables, stored through the fully
// symmetric coefficient array h_{mnr} = d^3 h, i.e.
//   h(x) = (1/6) sum h_{mnr} x^m x^n x^r.
// With this normalisation the degree-3 Euler identities
//   h_m x^m = 3h,  h_mn x^n = 2 h_m,  h_mnr x^r = h_mn
// are plain integer arithmetic for integer coefficient tables.

#include <array>
#include <cctype>
#include <string>
#include <vector>

#include "specgeom/core.hpp"

namespace specgeom {

class CubicForm {
 public:
  CubicForm() = default;
  explicit CubicForm(int n) : n_(n), c_(static_cast<std::size_t>(n) * n * n, 0.0) {
    if (n <= 0) throw ValidationError("cubic form needs n >= 1");
  }

  int n() const { return n_; }

  double coeff(int i, int j, int k) const { return c_[idx(i, j, k)]; }

  // Sets h_{ijk} = v on the whole permutation orbit of (i, j, k).
  void set_coeff(int i, int j, int k, double v) {
    const std::array<int, 3> a{i, j, k};
    std::array<int, 3> s = a;
    std::sort(s.begin(), s.end());
    do {
      c_[idx(s[0], s[1], s[2])] = v;
    } while (std::next_permutation(s.begin(), s.end()));
  }

  // Adds the monomial coef * x_i x_j x_k (indices may repeat) to h. Its third
  // derivative contributes coef at every one of the 6 slot permutations, with
  // repeated indices accumulating.
  void add_monomial(int i, int j, int k, double coef) {
    const std::array<std::array<int, 3>, 6> perms{{{i, j, k},
                                                   {i, k, j},
                                                   {j, i, k},
                                                   {j, k, i},
                                                   {k, i, j},
                                                   {k, j, i}}};
    for (const auto& p : perms) c_[idx(p[0], p[1], p[2])] += coef;
  }

  template <typename S>
  S value(const Eigen::Matrix<S, Eigen::Dynamic, 1>& x) const {
    S acc{};
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) acc += c_[idx(i, j, k)] * x[i] * x[j] * x[k];
    return acc / 6.0;
  }

  template <typename S>
  Eigen::Matrix<S, Eigen::Dynamic, 1> grad(
      const Eigen::Matrix<S, Eigen::Dynamic, 1>& x) const {
    Eigen::Matrix<S, Eigen::Dynamic, 1> g(n_);
    for (int m = 0; m < n_; ++m) {
      S acc{};
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) acc += c_[idx(m, j, k)] * x[j] * x[k];
      g[m] = acc / 2.0;
    }
    return g;
  }

  template <typename S>
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> hessian(
      const Eigen::Matrix<S, Eigen::Dynamic, 1>& x) const {
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> h(n_, n_);
    for (int m = 0; m < n_; ++m)
      for (int j = 0; j < n_; ++j) {
        S acc{};
        for (int k = 0; k < n_; ++k) acc += c_[idx(m, j, k)] * x[k];
        h(m, j) = acc;
      }
    return h;
  }

  double value(const Vec& x) const { return value<double>(x); }
  Vec grad(const Vec& x) const { return grad<double>(x); }
  Mat hess(const Vec& x) const { return hessian<double>(x); }

  // Entries are 1-based (mu, nu, rho, value); entries naming the same index
  // multiset must agree, duplicates with conflicting values are rejected.
  static CubicForm from_entries(int n,
                                const std::vector<std::array<double, 4>>& entries) {
    CubicForm h(n);
    std::vector<bool> seen(h.c_.size(), false);
    for (const auto& e : entries) {
      int i = static_cast<int>(e[0]) - 1;
      int j = static_cast<int>(e[1]) - 1;
      int k = static_cast<int>(e[2]) - 1;
      for (int v : {i, j, k}) {
        if (v < 0 || v >= n) {
          throw ValidationError("cubic entry index out of range 1.." + std::to_string(n));
        }
      }
      std::array<int, 3> s{i, j, k};
      std::sort(s.begin(), s.end());
      const std::size_t slot = h.idx(s[0], s[1], s[2]);
      if (seen[slot] && h.c_[slot] != e[3]) {
        throw ValidationError("conflicting values for symmetrized cubic entry");
      }
      seen[slot] = true;
      h.set_coeff(i, j, k, e[3]);
    }
    return h;
  }

 private:
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }

  int n_ = 0;
  std::vector<double> c_;
};

// ---------------------------------------------------------------------------
// Monomial-string parser: sums of c * x^a x^b x^c terms, nothing more.
// Accepted inputs look like "x1^3", "2 x1^2 x2 - 0.5 x2 x3 x3", "x1*x2*x3".
// Every term must have total degree exactly 3.

namespace detail {

struct CubicParser {
  std::string s;
  std::size_t pos = 0;

  explicit CubicParser(std::string in) : s(std::move(in)) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("cubic parse error at position " + std::to_string(pos) +
                          ": " + what);
  }

  double number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
            s[pos] == 'e' || s[pos] == 'E' ||
            ((s[pos] == '+' || s[pos] == '-') && pos > start &&
             (s[pos - 1] == 'e' || s[pos - 1] == 'E')))) {
      ++pos;
    }
    if (pos == start) fail("expected a number");
    try {
      return std::stod(s.substr(start, pos - start));
    } catch (const std::exception&) {
      fail("bad numeric literal '" + s.substr(start, pos - start) + "'");
    }
  }

  int variable() {
    skip_ws();
    if (pos >= s.size() || s[pos] != 'x') fail("expected variable 'x<k>'");
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("variable needs an index, e.g. x1");
    return std::stoi(s.substr(start, pos - start));
  }

  // One term: optional coefficient then variables until degree 3.
  void term(double sign, std::vector<std::pair<std::vector<int>, double>>& out) {
    skip_ws();
    double coef = sign;
    if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
      coef *= number();
      skip_ws();
      if (eat('*')) skip_ws();
    }
    std::vector<int> vars;
    while (true) {
      skip_ws();
      if (pos >= s.size() || s[pos] != 'x') break;
      const int v = variable();
      int exp = 1;
      if (eat('^')) {
        skip_ws();
        const double e = number();
        exp = static_cast<int>(e);
        if (exp <= 0 || e != exp) fail("exponents must be positive integers");
      }
      for (int r = 0; r < exp; ++r) vars.push_back(v);
      if (eat('*')) continue;
    }
    if (vars.size() != 3) fail("each term must have total degree 3");
    out.emplace_back(vars, coef);
  }
};

}  // namespace detail

inline CubicForm parse_cubic(const std::string& expr, int n_hint = 0) {
  detail::CubicParser p(expr);
  std::vector<std::pair<std::vector<int>, double>> terms;
  p.skip_ws();
  if (p.pos >= p.s.size()) p.fail("empty expression");
  double sign = 1.0;
  if (p.eat('-')) sign = -1.0;
  else p.eat('+');
  p.term(sign, terms);
  while (true) {
    p.skip_ws();
    if (p.pos >= p.s.size()) break;
    if (p.eat('+')) sign = 1.0;
    else if (p.eat('-')) sign = -1.0;
    else p.fail("expected '+' or '-' between terms");
    p.term(sign, terms);
  }

  int n = n_hint;
  for (const auto& [vars, coef] : terms)
    for (int v : vars) n = std::max(n, v);
  CubicForm h(n);
  for (const auto& [vars, coef] : terms) {
    for (int v : vars) {
      if (v < 1) throw ValidationError("variable indices start at x1");
    }
    h.add_monomial(vars[0] - 1, vars[1] - 1, vars[2] - 1, coef);
  }
  return h;
}

}  // namespace specgeom
