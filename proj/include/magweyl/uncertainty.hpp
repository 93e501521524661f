#pragma once

#include <random>

#include "magweyl/weyl.hpp"

namespace magweyl {

/// Orbit-hyperplane hypothesis <Ad*(exp X) ξ0, X0> = c0 for all X.
struct HyperplaneCertificate {
  Vec x0;
  Vec xi0;
  double c0 = 0.0;
  /// max over probes X and 1 <= j < step of |<ξ0, (ad X)^j X0>| / (|ξ0| |X|^j |X0|).
  double residual = 0.0;
  bool valid = false;
};

/// Residual sweep over the basis plus `random_probes` seeded probes; no throw.
HyperplaneCertificate check_hyperplane(const Algebra& alg, const Vec& xi0, const Vec& x0, int random_probes = 64,
                                       std::uint64_t seed = 1);
/// As check_hyperplane, but throws CertificateFailed when the hypothesis is violated.
HyperplaneCertificate hyperplane_constant(const Algebra& alg, const Vec& xi0, const Vec& x0, int random_probes = 64,
                                          std::uint64_t seed = 1);

/// f · P for a polynomial P (exact for built-in terms, product rule for closures).
AnalyticTestFunction multiply(const AnalyticTestFunction& f, const Polynomial<cd>& p);

/// max over probes Y of |([Op(a_{X0}), Op(a_{ξ0})] f)(Y) - i c0 f(Y)|, with Op(a_{X0}) = momentum_apply
/// and Op(a_{ξ0}) multiplication by <ξ0, ·>.
double commutator_defect(const MagneticSetting& s, const HyperplaneCertificate& cert, const AnalyticTestFunction& f,
                         const std::vector<Vec>& probes);

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// (‖Op(a_{X0}) f‖ ‖Op(a_{ξ0}) f‖ / ‖f‖², ½|c0|) with norms on `grid`.
InequalitySides heisenberg_product(const MagneticSetting& s, const HyperplaneCertificate& cert,
                                   const AnalyticTestFunction& f, const GridSpec& grid);

/// Exponents of the mixed-norm Lieb inequality and the quantities derived from them.
struct LiebParameters {
  double p1 = 2, p2 = 2, r1 = 4, r2 = 4, s1 = 4, s2 = 4;

  double p() const { return 1.0 / (1.0 / r1 + 1.0 / r2); }
  double q() const { return 1.0 / (1.0 / s1 + 1.0 / s2); }
  double t1() const;
  double t2() const;
  /// Throws ParameterViolation naming the first violated hypothesis.
  void validate() const;
};

/// Hölder conjugate l' = l/(l-1), with 1' = ∞ and ∞' = 1.
double conjugate_exponent(double l);
/// A_l = (l^{1/l} / l'^{1/l'})^{1/2}; A_1 = A_∞ = 1.
double babenko_beckner(double l);
/// C = C1 C2, C_j = (A_{α_j} A_{β_j} A_{γ_j})^n.
double lieb_constant(const LiebParameters& params, int dim);
/// (p^{-1/p})^n, the constant of the equal-exponent L^p bound.
double lieb_lp_constant(double p, int dim);

/// ‖𝒜_{φ1} f1 · conj 𝒜_{φ2} f2‖_{L^p} against (p^{-1/p})^n ‖f1‖‖f2‖‖φ1‖‖φ2‖.
InequalitySides lieb_check(const PhaseSpaceFunction& a1, const PhaseSpaceFunction& a2, double p,
                           double norm_product);
/// Same with the transforms computed here.
InequalitySides lieb_check(const MagneticSetting& s, const AnalyticTestFunction& f1, const AnalyticTestFunction& f2,
                           const AnalyticTestFunction& phi1, const AnalyticTestFunction& phi2, double p,
                           const GridSpec& position, const GridSpec& fourier);

/// Mixed-norm inequality at general admissible exponents: ‖Θ‖_{L^{p,q}} against
/// C ‖f1‖_{p1} ‖f2‖_{p2} ‖φ1‖_{t1} ‖φ2‖_{t2}.
InequalitySides lieb_mixed_check(const MagneticSetting& s, const LiebParameters& params,
                                 const AnalyticTestFunction& f1, const AnalyticTestFunction& f2,
                                 const AnalyticTestFunction& phi1, const AnalyticTestFunction& phi2,
                                 const GridSpec& position, const GridSpec& fourier);

/// Discrete L^p norm of grid samples.
double lp_norm(const GridFunction& f, double p);

/// -Σ ρ log ρ dX dξ/(2π)^n with ρ = |𝒜|² / (‖f‖‖φ‖)², 0 log 0 = 0.
double entropy(const PhaseSpaceFunction& a, double norm_product);
double entropy(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
               const GridSpec& position, const GridSpec& fourier);

/// Lower bound on the measure (dX dξ/(2π)^n) of any set carrying (1-ε) of the product mass.
/// p1 = p2 = 2 uses the closed form swept over p ∈ (2, p_max]; otherwise the sweep runs over
/// p ∈ (h, p_max] with r_j = s_j = p max{p_j, p_j'}/h.
double concentration_bound(double eps, double p1, double p2, int dim, int samples = 512, double p_max = 64.0);

/// Measure of the smallest set of lattice cells capturing (1-ε) of `mass_total` in |Θ|.
double greedy_support_measure(const PhaseSpaceFunction& theta, double eps, double mass_total);

}  // namespace magweyl
