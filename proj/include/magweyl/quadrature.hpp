#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "magweyl/error.hpp"

namespace magweyl {

/// Gauss-Legendre rule on [0, 1]; exact for polynomials of degree <= 2n-1.
template <typename Scalar>
struct GaussLegendre {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

// Golub-Welsch: eigen-decomposition of the Jacobi matrix of the Legendre recurrence.
template <typename Scalar>
GaussLegendre<Scalar> make_gauss_legendre(int n) {
  require(n >= 1, Errc::parameter_violation, "Gauss-Legendre rule needs at least one node");
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat jacobi = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const Scalar kk = Scalar(k);
    const Scalar b = kk / std::sqrt(Scalar(4) * kk * kk - Scalar(1));
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(jacobi);
  GaussLegendre<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const Scalar v0 = es.eigenvectors()(0, i);
    rule.nodes[i] = (es.eigenvalues()(i) + Scalar(1)) / Scalar(2);
    rule.weights[i] = v0 * v0;  // weight 2 v0^2 on [-1,1], halved on [0,1]
  }
  return rule;
}

/// Cached rule with n nodes on [0, 1].
template <typename Scalar>
const GaussLegendre<Scalar>& gauss_legendre(int n) {
  constexpr int kCached = 48;
  static const std::vector<GaussLegendre<Scalar>> table = [] {
    std::vector<GaussLegendre<Scalar>> t;
    for (int k = 1; k <= kCached; ++k) t.push_back(make_gauss_legendre<Scalar>(k));
    return t;
  }();
  require(n >= 1 && n <= kCached, Errc::parameter_violation, "Gauss-Legendre node count out of range");
  return table[n - 1];
}

/// Smallest rule that integrates polynomials of the given degree exactly.
template <typename Scalar>
const GaussLegendre<Scalar>& gauss_legendre_for_degree(int degree) {
  return gauss_legendre<Scalar>((degree + 2) / 2);
}

/// Nodes t_j and weights w_j with p'(0) = sum_j w_j p(t_j) for every polynomial
/// p of degree <= `degree`. Nodes are Chebyshev points of the first kind.
template <typename Scalar>
struct DerivativeStencil {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;
};

template <typename Scalar>
DerivativeStencil<Scalar> make_derivative_stencil(int degree) {
  require(degree >= 1, Errc::parameter_violation, "derivative stencil needs degree >= 1");
  const int m = degree + 1;
  DerivativeStencil<Scalar> st;
  st.nodes.resize(m);
  st.weights.assign(m, Scalar(0));
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int j = 0; j < m; ++j) st.nodes[j] = std::cos(Scalar(2 * j + 1) * pi / Scalar(2 * m));
  // l_j'(0) = sum_{k != j} 1/(t_j - t_k) prod_{l != j,k} (0 - t_l)/(t_j - t_l)
  for (int j = 0; j < m; ++j) {
    Scalar acc(0);
    for (int k = 0; k < m; ++k) {
      if (k == j) continue;
      Scalar prod = Scalar(1) / (st.nodes[j] - st.nodes[k]);
      for (int l = 0; l < m; ++l)
        if (l != j && l != k) prod *= -st.nodes[l] / (st.nodes[j] - st.nodes[l]);
      acc += prod;
    }
    st.weights[j] = acc;
  }
  return st;
}

template <typename Scalar>
const DerivativeStencil<Scalar>& derivative_stencil(int degree) {
  constexpr int kCached = 16;
  static const std::vector<DerivativeStencil<Scalar>> table = [] {
    std::vector<DerivativeStencil<Scalar>> t;
    for (int d = 1; d <= kCached; ++d) t.push_back(make_derivative_stencil<Scalar>(d));
    return t;
  }();
  require(degree >= 1 && degree <= kCached, Errc::parameter_violation,
          "derivative stencil degree out of range");
  return table[degree - 1];
}

}  // namespace magweyl
