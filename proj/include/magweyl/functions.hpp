#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "magweyl/grid.hpp"

namespace magweyl {

/// Smooth function g -> C with analytic gradient. Built-ins are finite sums of terms
/// P(Y) exp(-½ (Y-c)ᵀ M (Y-c) + i<ω, Y>); M = 0 gives plane waves and polynomials.
class AnalyticTestFunction {
 public:
  struct Term {
    Vec center;
    Eigen::MatrixXd precision;  // M, symmetric positive semi-definite
    Vec modulation;             // ω
    Polynomial<cd> prefactor;   // P
  };

  AnalyticTestFunction() = default;

  static AnalyticTestFunction gaussian(const Vec& center, const Eigen::MatrixXd& precision, const Vec& modulation,
                                       Polynomial<cd> prefactor);
  static AnalyticTestFunction gaussian(const Vec& center, const Eigen::MatrixXd& precision);
  /// exp(-|Y|²/2).
  static AnalyticTestFunction standard_gaussian(int dim);
  static AnalyticTestFunction plane_wave(const Vec& modulation);
  static AnalyticTestFunction constant(int dim, cd value);
  static AnalyticTestFunction polynomial(Polynomial<cd> p);
  /// Arbitrary closure; without `gradient`, gradient() throws GradientUnavailable.
  static AnalyticTestFunction custom(int dim, std::function<cd(const Vec&)> value,
                                     std::function<CVec(const Vec&)> gradient = {}, double decay_radius = 0.0);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool has_gradient() const { return !custom_value_ || static_cast<bool>(custom_gradient_); }

  cd value(const Vec& y) const;
  cd operator()(const Vec& y) const { return value(y); }
  CVec gradient(const Vec& y) const;

  /// Radius beyond which every term is below 1e-16 of its peak; +∞ for non-decaying input.
  double decay_radius() const;

  AnalyticTestFunction& operator*=(cd s);
  friend AnalyticTestFunction operator*(cd s, AnalyticTestFunction f) { return f *= s; }
  friend AnalyticTestFunction operator+(const AnalyticTestFunction& a, const AnalyticTestFunction& b);

 private:
  struct Compiled {
    CompiledPolynomial<cd> p;
    std::vector<CompiledPolynomial<cd>> dp;
    bool zero_precision;
    bool zero_modulation;
  };
  void compile();

  int dim_ = 0;
  std::vector<Term> terms_;
  std::vector<Compiled> compiled_;
  std::function<cd(const Vec&)> custom_value_;
  std::function<CVec(const Vec&)> custom_gradient_;
  double custom_radius_ = 0.0;
};

/// Pointwise evaluation on the lattice; warns when the boundary carries more than
/// 1e-10 of the peak magnitude.
GridFunction sample(const AnalyticTestFunction& f, const GridSpec& grid);

/// (F | G) = Σ F conj(G) ΔY, linear in the first slot.
cd inner_product(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (Σ_X (Σ_ξ |F|^q dξ)^{p/q} dX)^{1/p}, inner over g*, outer over g; p, q ∈ [1, ∞].
double mixed_norm(const PhaseSpaceFunction& f, double p, double q);
/// Discrete L^p norm of a phase-space function, p ∈ [1, ∞].
double lp_norm(const PhaseSpaceFunction& f, double p);
/// Σ F conj(G) dX dξ/(2π)^n.
cd inner_product(const PhaseSpaceFunction& f, const PhaseSpaceFunction& g);

}  // namespace magweyl
