#pragma once

#include <complex>
#include <vector>

#include "magweyl/maps.hpp"

namespace magweyl {

/// A: g -> g*, one real polynomial per dual coordinate, A_Y = sum_k A_k(Y) ξ_k.
class MagneticPotential {
 public:
  MagneticPotential() = default;
  /// The zero potential on an n-dimensional algebra.
  explicit MagneticPotential(int dim) : components_(dim, Polynomial<double>(dim)) { compile(); }
  explicit MagneticPotential(PolynomialVector<double> components) : components_(std::move(components)) {
    for (const auto& p : components_)
      require(p.nvars() == dim(), Errc::dimension_mismatch, "potential component arity must equal dimension");
    compile();
  }

  /// A_Y = M Y: every component linear.
  template <typename Derived>
  static MagneticPotential linear(const Eigen::MatrixBase<Derived>& m) {
    require(m.rows() == m.cols(), Errc::dimension_mismatch, "linear potential needs a square matrix");
    const int n = static_cast<int>(m.rows());
    PolynomialVector<double> comps;
    for (int k = 0; k < n; ++k) comps.push_back(Polynomial<double>::linear(m.row(k).transpose()));
    return MagneticPotential(std::move(comps));
  }

  int dim() const { return static_cast<int>(components_.size()); }
  bool is_zero() const { return zero_; }
  int degree() const { return degree_; }
  const PolynomialVector<double>& components() const { return components_; }

  template <typename Derived>
  Vec operator()(const Eigen::MatrixBase<Derived>& y) const {
    Vec a(dim());
    for (int k = 0; k < dim(); ++k) a(k) = compiled_[k](y);
    return a;
  }

  /// <A_Y, V>.
  template <typename DY, typename DV>
  double pair(const Eigen::MatrixBase<DY>& y, const Eigen::MatrixBase<DV>& v) const {
    double acc = 0.0;
    for (int k = 0; k < dim(); ++k)
      if (!compiled_[k].is_zero()) acc += compiled_[k](y) * v(k);
    return acc;
  }

 private:
  void compile() {
    compiled_.clear();
    zero_ = true;
    degree_ = 0;
    for (const auto& p : components_) {
      compiled_.emplace_back(p);
      zero_ = zero_ && p.is_zero();
      degree_ = std::max(degree_, p.degree());
    }
  }

  PolynomialVector<double> components_;
  std::vector<CompiledPolynomial<double>> compiled_;
  bool zero_ = true;
  int degree_ = 0;
};

namespace detail {

// Nodes for the exact s-integral of <A(W(s)), X̄(W(s))> with W polynomial of degree <= step in s.
inline const GaussLegendre<double>& phase_rule(const Algebra& alg, const MagneticPotential& a) {
  const int s = alg.step();
  const int degree = a.degree() * s + s * (s - 1);
  return gauss_legendre<double>((degree + 2) / 2 + 2);
}

}  // namespace detail

/// Exponent of τ_A: ∫₀¹ <A_W, (R_W)'_0 X> ds with W = (-sX)*Y.
template <typename DX, typename DY>
double tau_exponent(const Algebra& alg, const MagneticPotential& a, const Eigen::MatrixBase<DX>& x,
                    const Eigen::MatrixBase<DY>& y) {
  if (a.is_zero()) return 0.0;
  detail::check_dim(alg.dim(), x.size());
  detail::check_dim(alg.dim(), y.size());
  const auto& gl = detail::phase_rule(alg, a);
  const Vec xv = x;
  double acc = 0.0;
  for (int q = 0; q < gl.size(); ++q) {
    const Vec w = bch(alg, Vec(-gl.nodes[q] * xv), y);
    acc += gl.weights[q] * a.pair(w, alg.is_abelian() ? xv : right_invariant_field(alg, xv, w));
  }
  return acc;
}

template <typename DX, typename DY>
std::complex<double> tau(const Algebra& alg, const MagneticPotential& a, const Eigen::MatrixBase<DX>& x,
                         const Eigen::MatrixBase<DY>& y) {
  return std::polar(1.0, tau_exponent(alg, a, x, y));
}

/// Exponent of α_A: ∫₀¹ <A(W), (R_W)'_0 (X*(-Y))> ds with W = (s(Y*(-X)))*X.
template <typename DX, typename DY>
double alpha_exponent(const Algebra& alg, const MagneticPotential& a, const Eigen::MatrixBase<DX>& x,
                      const Eigen::MatrixBase<DY>& y) {
  if (a.is_zero()) return 0.0;
  detail::check_dim(alg.dim(), x.size());
  detail::check_dim(alg.dim(), y.size());
  const Vec xv = x, yv = y;
  const Vec u = bch(alg, yv, Vec(-xv));
  const Vec d = bch(alg, xv, Vec(-yv));
  const auto& gl = detail::phase_rule(alg, a);
  double acc = 0.0;
  for (int q = 0; q < gl.size(); ++q) {
    const Vec w = bch(alg, Vec(gl.nodes[q] * u), xv);
    acc += gl.weights[q] * a.pair(w, alg.is_abelian() ? d : right_invariant_field(alg, d, w));
  }
  return acc;
}

template <typename DX, typename DY>
std::complex<double> alpha(const Algebra& alg, const MagneticPotential& a, const Eigen::MatrixBase<DX>& x,
                           const Eigen::MatrixBase<DY>& y) {
  return std::polar(1.0, alpha_exponent(alg, a, x, y));
}

/// The algebra together with its magnetic potential.
struct MagneticSetting {
  Algebra algebra;
  MagneticPotential potential;

  MagneticSetting() = default;
  explicit MagneticSetting(Algebra alg) : algebra(std::move(alg)), potential(algebra.dim()) {}
  MagneticSetting(Algebra alg, MagneticPotential a) : algebra(std::move(alg)), potential(std::move(a)) {
    require(potential.dim() == algebra.dim(), Errc::dimension_mismatch, "potential and algebra dimensions differ");
  }
  int dim() const { return algebra.dim(); }
};

inline constexpr int kMaxPolynomialDegree = 24;

/// θ₀(X, ξ) as the polynomial Y -> <ξ, Y> + <A_Y, (R_Y)'_0 X>.
template <typename DX, typename DXi>
Polynomial<double> theta0(const Algebra& alg, const MagneticPotential& a, const Eigen::MatrixBase<DX>& x,
                          const Eigen::MatrixBase<DXi>& xi, int max_degree = kMaxPolynomialDegree) {
  const int n = alg.dim();
  detail::check_dim(n, x.size());
  detail::check_dim(n, xi.size());
  Polynomial<double> r = Polynomial<double>::linear(xi);
  if (!a.is_zero()) {
    const PolynomialVector<double> field = right_invariant_field_polynomial(alg, x);
    for (int k = 0; k < n; ++k) r += a.components()[k] * field[k];
  }
  require(r.degree() <= max_degree, Errc::degree_overflow, "θ₀ exceeds the polynomial degree bound");
  return r;
}

}  // namespace magweyl
