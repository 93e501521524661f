#pragma once

#include <vector>

#include "magweyl/algebra.hpp"

namespace magweyl {

/// Element (f, X) of P_N(g) ⋊ g.
struct SemidirectElement {
  Polynomial<double> f;
  Vec x;
};

/// [(f1, X1), (f2, X2)] = (λ̇(X1) f2 - λ̇(X2) f1, [X1, X2]). Requires a two-step algebra,
/// the only case where λ̇ preserves P_N.
inline SemidirectElement semidirect_bracket(const Algebra& alg, const SemidirectElement& a,
                                            const SemidirectElement& b, int degree_bound) {
  require(alg.step() <= 2, Errc::degree_overflow, "semidirect bracket needs a two-step algebra");
  require(a.f.degree() <= degree_bound && b.f.degree() <= degree_bound, Errc::degree_overflow,
          "polynomial part exceeds the degree bound");
  SemidirectElement r{lambda_dot_polynomial(alg, a.x, b.f) - lambda_dot_polynomial(alg, b.x, a.f),
                      bracket(alg, a.x, b.x)};
  require(r.f.degree() <= degree_bound, Errc::degree_overflow, "bracket left P_N");
  return r;
}

/// All exponent vectors of total degree <= N in n variables.
inline std::vector<MultiIndex> monomials_up_to(int n, int degree) {
  std::vector<MultiIndex> out;
  MultiIndex m(n, 0);
  auto rec = [&](int var, int left, auto& self) -> void {
    if (var == n) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m[var] = e;
      self(var + 1, left - e, self);
    }
    m[var] = 0;
  };
  rec(0, degree, rec);
  return out;
}

/// Dimensions of the lower central series m^1 = m, m^{k+1} = [m, m^k] of P_N(g) ⋊ g,
/// ending with the first zero term. The nilpotency step is size() - 1.
inline std::vector<int> semidirect_lower_central_series(const Algebra& alg, int degree_bound) {
  const int n = alg.dim();
  const std::vector<MultiIndex> monos = monomials_up_to(n, degree_bound);
  const int np = static_cast<int>(monos.size());
  const int total = np + n;

  auto to_element = [&](const Eigen::VectorXd& v) {
    SemidirectElement e{Polynomial<double>(n), Vec::Zero(n)};
    for (int a = 0; a < np; ++a)
      if (v(a) != 0.0) e.f.add_term(monos[a], v(a));
    for (int i = 0; i < n; ++i) e.x(i) = v(np + i);
    return e;
  };
  auto to_coords = [&](const SemidirectElement& e) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(total);
    for (int a = 0; a < np; ++a) v(a) = e.f.coefficient(monos[a]);
    for (int i = 0; i < n; ++i) v(np + i) = e.x(i);
    return v;
  };

  std::vector<int> dims;
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(total, total);
  for (int depth = 0; depth <= total + 1; ++depth) {
    const int r = static_cast<int>(q.cols());
    dims.push_back(r);
    if (r == 0) return dims;
    Eigen::MatrixXd next(total, total * r);
    for (int g = 0; g < total; ++g) {
      const SemidirectElement eg = to_element(Eigen::VectorXd::Unit(total, g));
      for (int c = 0; c < r; ++c)
        next.col(g * r + c) = to_coords(semidirect_bracket(alg, eg, to_element(q.col(c)), degree_bound));
    }
    q = detail::span_basis(next);
  }
  throw Error(Errc::not_nilpotent, "semidirect lower central series does not terminate");
}

}  // namespace magweyl
