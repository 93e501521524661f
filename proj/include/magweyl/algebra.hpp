#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Core>
#include <Eigen/QR>
#include <unsupported/Eigen/CXX11/Tensor>

#include "magweyl/bch_series.hpp"
#include "magweyl/error.hpp"
#include "magweyl/polynomial.hpp"
#include "magweyl/quadrature.hpp"

namespace magweyl {

inline constexpr int kMaxDim = 16;

/// Coordinates in the Jordan-Hölder basis. Storage is inline (no heap) up to kMaxDim.
template <typename Scalar>
using AlgebraVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

/// Dual vectors share the representation; the pairing is the dot product.
template <typename Scalar>
using DualVector = AlgebraVector<Scalar>;

using Vec = AlgebraVector<double>;
using CVec = AlgebraVector<std::complex<double>>;

/// Bracket tensor: c(i, j, k) is the coefficient of X_k in [X_i, X_j] (0-based).
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int dim) : dim_(dim), c_(dim, dim, dim) {
    require(dim >= 1 && dim <= kMaxDim, Errc::dimension_mismatch, "algebra dimension must lie in [1, 16]");
    c_.setZero();
  }
  /// Takes an arbitrary tensor; dimensions are checked by validate().
  explicit StructureConstants(Eigen::Tensor<double, 3> c) : dim_(static_cast<int>(c.dimension(0))), c_(std::move(c)) {}

  int dim() const { return dim_; }
  const Eigen::Tensor<double, 3>& tensor() const { return c_; }
  double operator()(int i, int j, int k) const { return c_(i, j, k); }
  double& operator()(int i, int j, int k) { return c_(i, j, k); }

  /// Sets [X_i, X_j] += v X_k together with the antisymmetric partner.
  StructureConstants& set_bracket(int i, int j, int k, double v) {
    require(i >= 0 && j >= 0 && k >= 0 && i < dim_ && j < dim_ && k < dim_, Errc::dimension_mismatch,
            "bracket index out of range");
    require(i != j || v == 0.0, Errc::antisymmetry_violation, "[X_i, X_i] must vanish");
    c_(i, j, k) = v;
    c_(j, i, k) = -v;
    return *this;
  }

 private:
  int dim_ = 0;
  Eigen::Tensor<double, 3> c_;
};

struct ValidationOptions {
  double tolerance = 1e-12;
  bool require_jordan_holder = true;
};

template <typename Scalar>
class NilpotentAlgebra;

template <typename Scalar = double>
NilpotentAlgebra<Scalar> validate(const StructureConstants& sc, const ValidationOptions& opts = {});

/// A validated nilpotent Lie algebra; immutable and shareable across threads.
template <typename Scalar>
class NilpotentAlgebra {
 public:
  using VectorType = AlgebraVector<Scalar>;
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  struct Entry {
    int i, j, k;  // i < j
    Scalar c;
  };

  int dim() const { return dim_; }
  int step() const { return step_; }
  bool is_abelian() const { return entries_.empty(); }
  const StructureConstants& structure() const { return structure_; }
  const std::vector<Entry>& entries() const { return entries_; }
  const BchWordTree& bch_tree() const { return tree_; }

  /// Matrix of ad(X): ad(X) Y = [X, Y].
  template <typename Derived>
  MatrixType ad(const Eigen::MatrixBase<Derived>& x) const {
    MatrixType m = MatrixType::Zero(dim_, dim_);
    for (const Entry& e : entries_) {
      m(e.k, e.j) += e.c * x(e.i);
      m(e.k, e.i) -= e.c * x(e.j);
    }
    return m;
  }

  VectorType zero() const { return VectorType::Zero(dim_); }
  VectorType basis(int i) const { return VectorType::Unit(dim_, i); }

  /// Coefficients b_k = B_k / k! of z / (e^z - 1), k < step.
  const std::vector<Scalar>& bernoulli_series() const { return bernoulli_; }

 private:
  friend NilpotentAlgebra validate<Scalar>(const StructureConstants&, const ValidationOptions&);

  int dim_ = 0;
  int step_ = 1;
  StructureConstants structure_;
  std::vector<Entry> entries_;
  BchWordTree tree_;
  std::vector<Scalar> bernoulli_;
};

using Algebra = NilpotentAlgebra<double>;

namespace detail {

inline void check_dim(int expected, Eigen::Index got) {
  require(got == expected, Errc::dimension_mismatch, "vector length does not match algebra dimension");
}

// Orthonormal basis of the column span. The threshold is absolute: callers feed
// brackets of unit vectors, and a relative threshold would promote pure rounding noise.
inline Eigen::MatrixXd span_basis(const Eigen::MatrixXd& m, double tol = 1e-9) {
  if (m.cols() == 0 || m.rows() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  const auto diag = qr.matrixQR().diagonal();
  int r = 0;
  while (r < diag.size() && std::abs(diag(r)) > tol) ++r;
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), r);
}

inline std::vector<long double> bernoulli_over_factorial(int count) {
  std::vector<long double> b(std::max(count, 1));
  // B_m = -1/(m+1) sum_{k<m} C(m+1,k) B_k with B_1 = -1/2
  std::vector<long double> B(b.size());
  B[0] = 1.0L;
  for (size_t m = 1; m < B.size(); ++m) {
    long double acc = 0.0L, binom = 1.0L;
    for (size_t k = 0; k < m; ++k) {
      acc += binom * B[k];
      binom = binom * static_cast<long double>(m + 1 - k) / static_cast<long double>(k + 1);
    }
    B[m] = -acc / static_cast<long double>(m + 1);
  }
  long double fact = 1.0L;
  for (size_t k = 0; k < b.size(); ++k) {
    if (k > 0) fact *= static_cast<long double>(k);
    b[k] = B[k] / fact;
  }
  return b;
}

}  // namespace detail

template <typename Scalar>
NilpotentAlgebra<Scalar> validate(const StructureConstants& sc, const ValidationOptions& opts) {
  const auto& c = sc.tensor();
  const int n = static_cast<int>(c.dimension(0));
  require(n >= 1 && n <= kMaxDim, Errc::dimension_mismatch, "algebra dimension must lie in [1, 16]");
  require(c.dimension(1) == n && c.dimension(2) == n, Errc::dimension_mismatch,
          "structure tensor must be n x n x n");

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(c(i, j, k)));
  const double tol = opts.tolerance * (1.0 + scale);

  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k)
        require(std::abs(c(i, j, k) + c(j, i, k)) <= tol, Errc::antisymmetry_violation,
                "c(i,j,k) != -c(j,i,k) at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                    std::to_string(k + 1) + ")");

  // [Xi,[Xj,Xl]] + [Xj,[Xl,Xi]] + [Xl,[Xi,Xj]] = 0
  const double jtol = opts.tolerance * (1.0 + scale) * (1.0 + scale);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = j + 1; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          double s = 0.0;
          for (int k = 0; k < n; ++k)
            s += c(j, l, k) * c(i, k, m) + c(l, i, k) * c(j, k, m) + c(i, j, k) * c(l, k, m);
          require(std::abs(s) <= jtol, Errc::jacobi_violation,
                  "Jacobi identity fails for basis triple (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                      "," + std::to_string(l + 1) + ")");
        }

  if (opts.require_jordan_holder)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k <= j; ++k)
          require(std::abs(c(j, i, k)) <= tol, Errc::ordering_violation,
                  "[X" + std::to_string(j + 1) + ", X" + std::to_string(i + 1) + "] has a component along X" +
                      std::to_string(k + 1) + "; basis is not Jordan-Hölder");

  NilpotentAlgebra<Scalar> alg;
  alg.dim_ = n;
  alg.structure_ = sc;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (c(i, j, k) != 0.0) alg.entries_.push_back({i, j, k, Scalar(c(i, j, k))});

  // lower central series g^1 = g, g^{k+1} = [g, g^k]
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  int step = 0;
  for (int depth = 1; depth <= n + 1; ++depth) {
    const int r = static_cast<int>(q.cols());
    if (r == 0) {
      step = depth - 1;
      break;
    }
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(n, n * r);
    for (int i = 0; i < n; ++i)
      for (int v = 0; v < r; ++v)
        for (const auto& e : alg.entries_)
          next(e.k, i * r + v) += double(e.c) * ((e.i == i ? q(e.j, v) : 0.0) - (e.j == i ? q(e.i, v) : 0.0));
    q = detail::span_basis(next);
  }
  require(step >= 1, Errc::not_nilpotent, "lower central series does not terminate");
  require(step <= 12, Errc::parameter_violation, "nilpotency step above 12 is not supported");
  alg.step_ = step;
  alg.tree_ = make_bch_word_tree(step);
  for (long double b : detail::bernoulli_over_factorial(step)) alg.bernoulli_.push_back(Scalar(b));
  return alg;
}

/// [X, Y] by contraction against the structure tensor.
template <typename Scalar, typename DX, typename DY>
AlgebraVector<typename DX::Scalar> bracket(const NilpotentAlgebra<Scalar>& alg, const Eigen::MatrixBase<DX>& x,
                                           const Eigen::MatrixBase<DY>& y) {
  using T = typename DX::Scalar;
  detail::check_dim(alg.dim(), x.size());
  detail::check_dim(alg.dim(), y.size());
  AlgebraVector<T> r = AlgebraVector<T>::Zero(alg.dim());
  for (const auto& e : alg.entries()) r(e.k) += T(e.c) * (x(e.i) * y(e.j) - x(e.j) * y(e.i));
  return r;
}

/// Group product X*Y = log(exp X exp Y), exact for the algebra's step.
template <typename Scalar, typename DX, typename DY>
AlgebraVector<typename DX::Scalar> bch(const NilpotentAlgebra<Scalar>& alg, const Eigen::MatrixBase<DX>& x,
                                       const Eigen::MatrixBase<DY>& y) {
  using T = typename DX::Scalar;
  detail::check_dim(alg.dim(), x.size());
  detail::check_dim(alg.dim(), y.size());
  AlgebraVector<T> r = x + y;
  if (alg.is_abelian()) return r;
  if (alg.step() == 2) return r + T(0.5) * bracket(alg, x, y);
  const auto& nodes = alg.bch_tree().nodes;
  std::vector<AlgebraVector<T>> value(nodes.size());
  r.setZero();
  for (size_t a = 0; a < nodes.size(); ++a) {
    const auto& nd = nodes[a];
    const AlgebraVector<T> letter = nd.letter == 'x' ? AlgebraVector<T>(x) : AlgebraVector<T>(y);
    value[a] = nd.parent < 0 ? letter : bracket(alg, letter, value[nd.parent]);
    if (nd.coeff != 0.0L) r += T(static_cast<double>(nd.coeff)) * value[a];
  }
  return r;
}

/// Right-invariant field X̄0(Y) = R(ad Y) X0 with R(z) = z / (e^z - 1) = 1 - z/2 + z²/12 - ...
template <typename Scalar, typename D0, typename DY>
AlgebraVector<typename D0::Scalar> right_invariant_field(const NilpotentAlgebra<Scalar>& alg,
                                                         const Eigen::MatrixBase<D0>& x0,
                                                         const Eigen::MatrixBase<DY>& y) {
  using T = typename D0::Scalar;
  detail::check_dim(alg.dim(), x0.size());
  detail::check_dim(alg.dim(), y.size());
  AlgebraVector<T> term = x0;
  AlgebraVector<T> acc = x0;
  const auto& b = alg.bernoulli_series();
  for (int k = 1; k < alg.step(); ++k) {
    term = bracket(alg, AlgebraVector<T>(y), term);
    acc += T(b[k]) * term;
  }
  return acc;
}

/// d/dt at t=0 of (tX)*Y, from a Chebyshev stencil exact for the polynomial degree in t.
template <typename Scalar, typename DX, typename DY>
AlgebraVector<typename DX::Scalar> right_translation_derivative(const NilpotentAlgebra<Scalar>& alg,
                                                                const Eigen::MatrixBase<DX>& x,
                                                                const Eigen::MatrixBase<DY>& y) {
  using T = typename DX::Scalar;
  if (alg.is_abelian()) return x;
  const auto& st = derivative_stencil<T>(alg.step());
  AlgebraVector<T> acc = AlgebraVector<T>::Zero(alg.dim());
  for (size_t j = 0; j < st.nodes.size(); ++j)
    acc += st.weights[j] * bch(alg, AlgebraVector<T>(st.nodes[j] * x), y);
  return acc;
}

/// D(X, Y) = d/dt at t=0 of (-tX)*Y.
template <typename Scalar, typename DX, typename DY>
AlgebraVector<typename DX::Scalar> translation_velocity(const NilpotentAlgebra<Scalar>& alg,
                                                        const Eigen::MatrixBase<DX>& x,
                                                        const Eigen::MatrixBase<DY>& y) {
  using T = typename DX::Scalar;
  if (alg.is_abelian()) return -x;
  const auto& st = derivative_stencil<T>(alg.step());
  AlgebraVector<T> acc = AlgebraVector<T>::Zero(alg.dim());
  for (size_t j = 0; j < st.nodes.size(); ++j)
    acc += st.weights[j] * bch(alg, AlgebraVector<T>(-st.nodes[j] * x), y);
  return acc;
}

/// (λ̇(X) f)(Y) = d/dt at t=0 of f((-tX)*Y) = <f'_Y, D(X, Y)>.
/// F needs value(Y) and gradient(Y); the gradient may be unavailable (see functions.hpp).
template <typename Scalar, typename F, typename DX, typename DY>
std::complex<Scalar> lambda_dot(const NilpotentAlgebra<Scalar>& alg, const Eigen::MatrixBase<DX>& x, const F& f,
                                const Eigen::MatrixBase<DY>& y) {
  const AlgebraVector<Scalar> d = translation_velocity(alg, x, y);
  const AlgebraVector<std::complex<Scalar>> g = f.gradient(AlgebraVector<Scalar>(y));
  std::complex<Scalar> acc(0);
  for (int k = 0; k < alg.dim(); ++k) acc += g(k) * d(k);
  return acc;
}

template <typename Scalar, typename Coeff, typename DX, typename DY>
Coeff lambda_dot(const NilpotentAlgebra<Scalar>& alg, const Eigen::MatrixBase<DX>& x, const Polynomial<Coeff>& f,
                 const Eigen::MatrixBase<DY>& y) {
  const AlgebraVector<Scalar> d = translation_velocity(alg, x, y);
  Coeff acc(0);
  for (int k = 0; k < alg.dim(); ++k) acc += f.derivative(k)(AlgebraVector<Scalar>(y)) * Coeff(d(k));
  return acc;
}

// ---- symbolic fields: coordinates of vector fields as polynomials in Y ----

/// [Y, V] where Y is the coordinate variable and V a polynomial vector field.
template <typename Scalar, typename Coeff>
PolynomialVector<Coeff> bracket_with_variable(const NilpotentAlgebra<Scalar>& alg, const PolynomialVector<Coeff>& v) {
  const int n = alg.dim();
  PolynomialVector<Coeff> r(n, Polynomial<Coeff>(n));
  for (const auto& e : alg.entries()) {
    r[e.k] += Coeff(e.c) * (Polynomial<Coeff>::variable(n, e.i) * v[e.j]);
    r[e.k] -= Coeff(e.c) * (Polynomial<Coeff>::variable(n, e.j) * v[e.i]);
  }
  return r;
}

/// Y -> X̄0(Y) as polynomials; equals Y -> (R_Y)'_0 X0.
template <typename Scalar, typename D0>
PolynomialVector<Scalar> right_invariant_field_polynomial(const NilpotentAlgebra<Scalar>& alg,
                                                          const Eigen::MatrixBase<D0>& x0) {
  const int n = alg.dim();
  detail::check_dim(n, x0.size());
  PolynomialVector<Scalar> term(n, Polynomial<Scalar>(n));
  for (int k = 0; k < n; ++k) term[k] = Polynomial<Scalar>::constant(n, x0(k));
  PolynomialVector<Scalar> acc = term;
  const auto& b = alg.bernoulli_series();
  for (int k = 1; k < alg.step(); ++k) {
    term = bracket_with_variable(alg, term);
    for (int m = 0; m < n; ++m) acc[m] += b[k] * term[m];
  }
  return acc;
}

/// λ̇(X) f as a polynomial: Y -> <f'_Y, -X̄(Y)>.
template <typename Scalar, typename Coeff, typename DX>
Polynomial<Coeff> lambda_dot_polynomial(const NilpotentAlgebra<Scalar>& alg, const Eigen::MatrixBase<DX>& x,
                                        const Polynomial<Coeff>& f) {
  const int n = alg.dim();
  const PolynomialVector<Scalar> field = right_invariant_field_polynomial(alg, x);
  Polynomial<Coeff> r(n);
  for (int k = 0; k < n; ++k) {
    Polynomial<Coeff> fk(n);
    for (const auto& [m, c] : field[k].terms()) fk.add_term(m, Coeff(c));
    r -= f.derivative(k) * fk;
  }
  return r;
}

}  // namespace magweyl
