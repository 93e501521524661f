#include "magweyl/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace magweyl {

HyperplaneCertificate check_hyperplane(const Algebra& alg, const Vec& xi0, const Vec& x0, int random_probes,
                                       std::uint64_t seed) {
  detail::check_dim(alg.dim(), xi0.size());
  detail::check_dim(alg.dim(), x0.size());
  HyperplaneCertificate cert{x0, xi0, xi0.dot(x0), 0.0, false};
  std::vector<Vec> probes;
  for (int i = 0; i < alg.dim(); ++i) probes.push_back(alg.basis(i));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < random_probes; ++k) {
    Vec v(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) v(i) = normal(rng);
    probes.push_back(v);
  }
  const double scale = std::max(xi0.norm() * x0.norm(), 1e-300);
  for (const Vec& x : probes) {
    Vec term = x0;
    double xn = 1.0;
    for (int j = 1; j < alg.step(); ++j) {
      term = bracket(alg, x, term);
      xn *= x.norm();
      cert.residual = std::max(cert.residual, std::abs(xi0.dot(term)) / (scale * xn));
    }
  }
  cert.valid = cert.residual <= 1e-10;
  return cert;
}

HyperplaneCertificate hyperplane_constant(const Algebra& alg, const Vec& xi0, const Vec& x0, int random_probes,
                                          std::uint64_t seed) {
  HyperplaneCertificate cert = check_hyperplane(alg, xi0, x0, random_probes, seed);
  if (!cert.valid) {
    std::ostringstream os;
    os << "coadjoint orbit of ξ0 is not contained in a hyperplane <·, X0> = const (residual " << cert.residual << ")";
    throw Error(Errc::certificate_failed, os.str());
  }
  return cert;
}

AnalyticTestFunction multiply(const AnalyticTestFunction& f, const Polynomial<cd>& p) {
  require(p.nvars() == f.dim(), Errc::dimension_mismatch, "polynomial and function dimensions differ");
  if (f.terms().empty()) {
    std::vector<CompiledPolynomial<cd>> dp;
    for (int k = 0; k < f.dim(); ++k) dp.emplace_back(p.derivative(k));
    const CompiledPolynomial<cd> cp(p);
    std::function<CVec(const Vec&)> grad;
    if (f.has_gradient())
      grad = [f, cp, dp](const Vec& y) -> CVec {
        CVec g = f.gradient(y) * cp(y);
        const cd v = f(y);
        for (int k = 0; k < y.size(); ++k) g(k) += dp[k](y) * v;
        return g;
      };
    return AnalyticTestFunction::custom(f.dim(), [f, cp](const Vec& y) { return f(y) * cp(y); }, grad,
                                        f.decay_radius());
  }
  AnalyticTestFunction out;
  bool first = true;
  for (const auto& t : f.terms()) {
    auto term = AnalyticTestFunction::gaussian(t.center, t.precision, t.modulation, t.prefactor * p);
    out = first ? term : out + term;
    first = false;
  }
  return out;
}

double commutator_defect(const MagneticSetting& s, const HyperplaneCertificate& cert, const AnalyticTestFunction& f,
                         const std::vector<Vec>& probes) {
  require(cert.valid, Errc::certificate_failed, "commutator identity needs a valid hyperplane certificate");
  const Polynomial<cd> ell = Polynomial<cd>::linear(cert.xi0.cast<cd>().eval());
  const AnalyticTestFunction lf = multiply(f, ell);
  double defect = 0.0;
  for (const Vec& y : probes) {
    const cd comm = momentum_apply(s, cert.x0, lf, y) - ell(y) * momentum_apply(s, cert.x0, f, y);
    defect = std::max(defect, std::abs(comm - cd(0.0, cert.c0) * f(y)));
  }
  return defect;
}

InequalitySides heisenberg_product(const MagneticSetting& s, const HyperplaneCertificate& cert,
                                   const AnalyticTestFunction& f, const GridSpec& grid) {
  require(cert.valid, Errc::certificate_failed, "Heisenberg inequality needs a valid hyperplane certificate");
  double nu = 0.0, nv = 0.0, nf = 0.0;
  for (std::int64_t i = 0; i < grid.size(); ++i) {
    const Vec y = grid.node(i);
    const cd fy = f(y);
    nu += std::norm(momentum_apply(s, cert.x0, f, y));
    nv += std::norm(cert.xi0.dot(y) * fy);
    nf += std::norm(fy);
  }
  require(nf > 0.0, Errc::parameter_violation, "Heisenberg product of the zero function");
  return {std::sqrt(nu * nv) / nf, 0.5 * std::abs(cert.c0)};
}

double conjugate_exponent(double l) {
  if (l == 1.0) return kInfinity;
  if (std::isinf(l)) return 1.0;
  return l / (l - 1.0);
}

double babenko_beckner(double l) {
  require(l >= 1.0, Errc::parameter_violation, "A_l needs l >= 1");
  if (l == 1.0 || std::isinf(l)) return 1.0;
  const double lc = conjugate_exponent(l);
  return std::sqrt(std::pow(l, 1.0 / l) / std::pow(lc, 1.0 / lc));
}

double LiebParameters::t1() const { return 1.0 / (1.0 / r1 + 1.0 / conjugate_exponent(s1) - 1.0 / p1); }
double LiebParameters::t2() const { return 1.0 / (1.0 / r2 + 1.0 / conjugate_exponent(s2) - 1.0 / p2); }

void LiebParameters::validate() const {
  const double tol = 1e-12;
  for (double pj : {p1, p2})
    require(pj > 1.0 && std::isfinite(pj), Errc::parameter_violation, "Lieb hypothesis p_j ∈ (1, ∞) violated");
  auto bound = [](double pj) { return std::max(pj, conjugate_exponent(pj)); };
  require(r1 >= bound(p1) - tol, Errc::parameter_violation, "Lieb hypothesis r_1 >= max{p_1, p_1'} violated");
  require(s1 >= bound(p1) - tol, Errc::parameter_violation, "Lieb hypothesis s_1 >= max{p_1, p_1'} violated");
  require(r2 >= bound(p2) - tol, Errc::parameter_violation, "Lieb hypothesis r_2 >= max{p_2, p_2'} violated");
  require(s2 >= bound(p2) - tol, Errc::parameter_violation, "Lieb hypothesis s_2 >= max{p_2, p_2'} violated");
}

double lieb_constant(const LiebParameters& params, int dim) {
  params.validate();
  auto cj = [dim](double pj, double rj, double sj) {
    const double sc = conjugate_exponent(sj);
    const double alpha = pj / sc;
    const double inv_beta = sc / rj + 1.0 - 1.0 / alpha;
    const double beta = inv_beta <= 0.0 ? kInfinity : 1.0 / inv_beta;
    const double ratio = rj / sc;
    const double gamma = ratio <= 1.0 + 1e-15 ? kInfinity : ratio / (ratio - 1.0);
    return std::pow(babenko_beckner(alpha) * babenko_beckner(beta) * babenko_beckner(gamma), dim);
  };
  return cj(params.p1, params.r1, params.s1) * cj(params.p2, params.r2, params.s2);
}

double lieb_lp_constant(double p, int dim) {
  require(p >= 1.0 && std::isfinite(p), Errc::invalid_exponent, "L^p bound needs finite p >= 1");
  return std::pow(p, -static_cast<double>(dim) / p);
}

namespace {
PhaseSpaceFunction product_conj(const PhaseSpaceFunction& a1, const PhaseSpaceFunction& a2) {
  require(a1.position == a2.position && a1.fourier == a2.fourier, Errc::grid_mismatch,
          "ambiguity functions live on different grids");
  PhaseSpaceFunction t{a1.position, a1.fourier, a1.values.cwiseProduct(a2.values.conjugate())};
  return t;
}
}  // namespace

InequalitySides lieb_check(const PhaseSpaceFunction& a1, const PhaseSpaceFunction& a2, double p,
                           double norm_product) {
  const PhaseSpaceFunction t = product_conj(a1, a2);
  return {lp_norm(t, p), lieb_lp_constant(p, a1.position.dim()) * norm_product};
}

InequalitySides lieb_check(const MagneticSetting& s, const AnalyticTestFunction& f1, const AnalyticTestFunction& f2,
                           const AnalyticTestFunction& phi1, const AnalyticTestFunction& phi2, double p,
                           const GridSpec& position, const GridSpec& fourier) {
  const double norms = l2_norm(sample(f1, fourier)) * l2_norm(sample(f2, fourier)) *
                       l2_norm(sample(phi1, fourier)) * l2_norm(sample(phi2, fourier));
  return lieb_check(ambiguity_full(s, f1, phi1, position, fourier), ambiguity_full(s, f2, phi2, position, fourier), p,
                    norms);
}

double lp_norm(const GridFunction& f, double p) {
  require(p >= 1.0, Errc::invalid_exponent, "exponent must lie in [1, ∞]");
  if (std::isinf(p)) return f.values.cwiseAbs().maxCoeff();
  return std::pow(f.values.array().abs().pow(p).sum() * f.grid.cell_volume(), 1.0 / p);
}

InequalitySides lieb_mixed_check(const MagneticSetting& s, const LiebParameters& params,
                                 const AnalyticTestFunction& f1, const AnalyticTestFunction& f2,
                                 const AnalyticTestFunction& phi1, const AnalyticTestFunction& phi2,
                                 const GridSpec& position, const GridSpec& fourier) {
  params.validate();
  const PhaseSpaceFunction t =
      product_conj(ambiguity_full(s, f1, phi1, position, fourier), ambiguity_full(s, f2, phi2, position, fourier));
  const double rhs = lieb_constant(params, s.dim()) * lp_norm(sample(f1, fourier), params.p1) *
                     lp_norm(sample(f2, fourier), params.p2) * lp_norm(sample(phi1, fourier), params.t1()) *
                     lp_norm(sample(phi2, fourier), params.t2());
  return {mixed_norm(t, params.p(), params.q()), rhs};
}

double entropy(const PhaseSpaceFunction& a, double norm_product) {
  require(norm_product > 0.0, Errc::parameter_violation, "entropy needs nonzero norms");
  const double scale = 1.0 / (norm_product * norm_product);
  double acc = 0.0;
  const cd* v = a.values.data();
  for (Eigen::Index i = 0; i < a.values.size(); ++i) {
    const double rho = std::norm(v[i]) * scale;
    if (rho > 0.0) acc -= rho * std::log(rho);
  }
  return acc * a.cell_volume();
}

double entropy(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
               const GridSpec& position, const GridSpec& fourier) {
  const double norms = l2_norm(sample(f, fourier)) * l2_norm(sample(phi, fourier));
  return entropy(ambiguity_full(s, f, phi, position, fourier), norms);
}

double concentration_bound(double eps, double p1, double p2, int dim, int samples, double p_max) {
  require(eps > 0.0 && eps < 1.0, Errc::parameter_violation, "ε must lie in (0, 1)");
  require(samples >= 1, Errc::parameter_violation, "sweep needs at least one sample");
  const double m1 = std::max(p1, conjugate_exponent(p1));
  const double m2 = std::max(p2, conjugate_exponent(p2));
  const bool quadratic = p1 == 2.0 && p2 == 2.0;
  // the closed form is a supremum over p > 2, the general one over p > h
  const double h = quadratic ? 2.0 : 1.0 / (1.0 / m1 + 1.0 / m2);
  require(p_max > h, Errc::parameter_violation, "sweep upper end must exceed the lower one");
  double best = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double p = h * std::pow(p_max / h, static_cast<double>(k) / samples);
    double v;
    if (quadratic) {
      v = std::pow(1.0 - eps, p / (p - 2.0)) * std::pow(p / 2.0, 2.0 * dim / (p - 2.0));
    } else {
      LiebParameters lp{p1, p2, p * m1 / h, p * m2 / h, p * m1 / h, p * m2 / h};
      v = std::pow((1.0 - eps) * lieb_constant(lp, dim), p / (p - 1.0));
    }
    if (std::isfinite(v)) best = std::max(best, v);
  }
  return best;
}

double greedy_support_measure(const PhaseSpaceFunction& theta, double eps, double mass_total) {
  std::vector<double> m(theta.values.size());
  const cd* v = theta.values.data();
  for (size_t i = 0; i < m.size(); ++i) m[i] = std::abs(v[i]);
  std::sort(m.begin(), m.end(), std::greater<>());
  const double cell = theta.cell_volume();
  const double target = (1.0 - eps) * mass_total;
  double acc = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    acc += m[i] * cell;
    if (acc >= target) return static_cast<double>(i + 1) * cell;
  }
  return kInfinity;
}

}  // namespace magweyl
