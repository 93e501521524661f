#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "magweyl/error.hpp"

namespace magweyl {

using MultiIndex = std::vector<int>;

/// Finite polynomial in `nvars` real variables with coefficients in Coeff
/// (real or complex). Terms with zero coefficient are never stored.
template <typename Coeff>
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Coeff>;

  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, Coeff c) {
    Polynomial p(nvars);
    p.add_term(MultiIndex(nvars, 0), c);
    return p;
  }

  /// The coordinate function y_i.
  static Polynomial variable(int nvars, int i) {
    Polynomial p(nvars);
    MultiIndex m(nvars, 0);
    m.at(i) = 1;
    p.add_term(m, Coeff(1));
    return p;
  }

  /// The linear function y -> sum_i c_i y_i.
  template <typename Derived>
  static Polynomial linear(const Eigen::MatrixBase<Derived>& c) {
    const int n = static_cast<int>(c.size());
    Polynomial p(n);
    for (int i = 0; i < n; ++i) p += variable(n, i) * Coeff(c(i));
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& powers, Coeff c) {
    require(static_cast<int>(powers.size()) == nvars_, Errc::dimension_mismatch,
            "multi-index length does not match polynomial arity");
    for (int e : powers) require(e >= 0, Errc::parameter_violation, "negative exponent");
    if (c == Coeff(0)) return;
    auto [it, inserted] = terms_.try_emplace(powers, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coeff(0)) terms_.erase(it);
    }
  }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
    return d;
  }

  Coeff coefficient(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  template <typename T, typename Derived>
  auto evaluate(const Eigen::MatrixBase<Derived>& y) const {
    using R = decltype(Coeff() * T());
    R acc(0);
    for (const auto& [m, c] : terms_) {
      R term(c);
      for (int i = 0; i < nvars_; ++i)
        for (int e = 0; e < m[i]; ++e) term *= T(y(i));
      acc += term;
    }
    return acc;
  }

  template <typename Derived>
  auto operator()(const Eigen::MatrixBase<Derived>& y) const {
    return evaluate<typename Derived::Scalar>(y);
  }

  Polynomial derivative(int i) const {
    Polynomial d(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      MultiIndex mm = m;
      const int e = mm[i]--;
      d.add_term(mm, c * Coeff(e));
    }
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(Coeff s) {
    if (s == Coeff(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Coeff(-1); }
  friend Polynomial operator*(Polynomial a, Coeff s) { return a *= s; }
  friend Polynomial operator*(Coeff s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_arity(b);
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        MultiIndex m(a.nvars_);
        for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  /// Largest absolute coefficient difference; used for approximate comparison.
  friend double max_abs_difference(const Polynomial& a, const Polynomial& b) {
    double d = 0.0;
    for (const auto& [m, c] : (a - b).terms_) d = std::max(d, static_cast<double>(std::abs(c)));
    return d;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_arity(const Polynomial& o) const {
    require(o.nvars_ == nvars_, Errc::dimension_mismatch, "polynomial arity mismatch");
  }

  int nvars_ = 0;
  Terms terms_;
};

/// Vector of polynomials, one per basis coordinate; a polynomial map g -> g.
template <typename Coeff>
using PolynomialVector = std::vector<Polynomial<Coeff>>;

/// Flattened polynomial for hot evaluation loops.
template <typename Coeff>
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial<Coeff>& p)
      : nvars_(p.nvars()), max_power_(0) {
    for (const auto& [m, c] : p.terms()) {
      coeffs_.push_back(c);
      powers_.insert(powers_.end(), m.begin(), m.end());
      for (int e : m) max_power_ = std::max(max_power_, e);
    }
  }

  bool is_zero() const { return coeffs_.empty(); }

  template <typename Derived>
  Coeff operator()(const Eigen::MatrixBase<Derived>& y) const {
    if (coeffs_.empty()) return Coeff(0);
    thread_local std::vector<typename Derived::Scalar> table;
    using S = typename Derived::Scalar;
    const int stride = max_power_ + 1;
    table.resize(static_cast<size_t>(nvars_ * stride));
    for (int i = 0; i < nvars_; ++i) {
      S v(1);
      for (int e = 0; e <= max_power_; ++e) {
        table[i * stride + e] = v;
        v *= y(i);
      }
    }
    Coeff acc(0);
    for (size_t t = 0; t < coeffs_.size(); ++t) {
      Coeff term = coeffs_[t];
      const int* m = powers_.data() + t * nvars_;
      for (int i = 0; i < nvars_; ++i)
        if (m[i]) term *= table[i * stride + m[i]];
      acc += term;
    }
    return acc;
  }

 private:
  int nvars_ = 0;
  int max_power_ = 0;
  std::vector<Coeff> coeffs_;
  std::vector<int> powers_;
};

}  // namespace magweyl
