#pragma once

#include <utility>

#include "magweyl/algebra.hpp"

namespace magweyl {

/// Ψ_X(Y) = ∫₀¹ Y*(sX) ds, by Gauss-Legendre exact for the degree in s (<= step).
template <typename Scalar, typename DX, typename DY>
AlgebraVector<Scalar> psi(const NilpotentAlgebra<Scalar>& alg, const Eigen::MatrixBase<DX>& x,
                          const Eigen::MatrixBase<DY>& y) {
  detail::check_dim(alg.dim(), x.size());
  detail::check_dim(alg.dim(), y.size());
  if (alg.step() <= 2) return bch(alg, y, AlgebraVector<Scalar>(Scalar(0.5) * x));
  const auto& gl = gauss_legendre_for_degree<Scalar>(alg.step());
  AlgebraVector<Scalar> acc = AlgebraVector<Scalar>::Zero(alg.dim());
  for (int q = 0; q < gl.size(); ++q) acc += gl.weights[q] * bch(alg, y, AlgebraVector<Scalar>(gl.nodes[q] * x));
  return acc;
}

/// Solves Ψ_X(Y) = Z. The correction Ψ_X(Y) - Y - X/2 raises the filtration degree,
/// so the fixed-point iteration is exact after at most `step` rounds.
template <typename Scalar, typename DX, typename DZ>
AlgebraVector<Scalar> psi_inv(const NilpotentAlgebra<Scalar>& alg, const Eigen::MatrixBase<DX>& x,
                              const Eigen::MatrixBase<DZ>& z) {
  detail::check_dim(alg.dim(), x.size());
  detail::check_dim(alg.dim(), z.size());
  if (alg.step() <= 2) return bch(alg, z, AlgebraVector<Scalar>(Scalar(-0.5) * x));
  const Scalar tol = Scalar(1e-14) * std::pow(Scalar(1) + x.norm() + z.norm(), Scalar(alg.step()));
  AlgebraVector<Scalar> y = z;
  for (int it = 0; it < alg.step() + 2; ++it) {
    const AlgebraVector<Scalar> r = psi(alg, x, y) - z;
    if (r.norm() <= tol) return y;
    y -= r;
  }
  const Scalar res = (psi(alg, x, y) - z).norm();
  require(res <= Scalar(100) * tol, Errc::no_convergence,
          "psi_inv did not converge within step+2 iterations (residual " + std::to_string(double(res)) + ")");
  return y;
}

/// Σ₁(X, Y) = ∫₀¹ (s(Y*(-X)))*X ds.
template <typename Scalar, typename DX, typename DY>
AlgebraVector<Scalar> sigma1(const NilpotentAlgebra<Scalar>& alg, const Eigen::MatrixBase<DX>& x,
                             const Eigen::MatrixBase<DY>& y) {
  detail::check_dim(alg.dim(), x.size());
  detail::check_dim(alg.dim(), y.size());
  const AlgebraVector<Scalar> w = bch(alg, y, AlgebraVector<Scalar>(-x));
  const auto& gl = gauss_legendre_for_degree<Scalar>(alg.step());
  AlgebraVector<Scalar> acc = AlgebraVector<Scalar>::Zero(alg.dim());
  for (int q = 0; q < gl.size(); ++q) acc += gl.weights[q] * bch(alg, AlgebraVector<Scalar>(gl.nodes[q] * w), x);
  return acc;
}

/// Σ(X, Y) = (Σ₁(X, Y), X*(-Y)).
template <typename Scalar, typename DX, typename DY>
std::pair<AlgebraVector<Scalar>, AlgebraVector<Scalar>> sigma(const NilpotentAlgebra<Scalar>& alg,
                                                              const Eigen::MatrixBase<DX>& x,
                                                              const Eigen::MatrixBase<DY>& y) {
  return {sigma1(alg, x, y), bch(alg, x, AlgebraVector<Scalar>(-y))};
}

}  // namespace magweyl
