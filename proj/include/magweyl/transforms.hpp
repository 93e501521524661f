#pragma once

#include "magweyl/functions.hpp"
#include "magweyl/magnetic.hpp"

namespace magweyl {

/// (π(exp_M θ(X, ξ)) φ)(Y) = τ_A(X, Y) e^{-i<ξ, Ψ_X(-Y)>} φ((-X)*Y).
cd represent(const MagneticSetting& s, const AnalyticTestFunction& phi, const Vec& x, const Vec& xi, const Vec& y);

/// conj τ_A(X, Z) f(Z) conj φ((-X)*Z) with Z = -Ψ_X⁻¹(-Y); the ambiguity function is
/// its Fourier transform in Y.
cd warped_integrand(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
                    const Vec& x, const Vec& y);

/// 𝒜_φ f(X, ·) on the dual lattice of `grid`.
struct AmbiguitySlice {
  Vec x;
  GridSpec grid;
  Eigen::VectorXcd values;
};

AmbiguitySlice ambiguity(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
                         const Vec& x, const GridSpec& grid);

/// 𝒜_φ f on (position nodes) × (dual lattice of `fourier`).
PhaseSpaceFunction ambiguity_full(const MagneticSetting& s, const AnalyticTestFunction& f,
                                  const AnalyticTestFunction& phi, const GridSpec& position, const GridSpec& fourier,
                                  std::int64_t budget = kDefaultSampleBudget);

/// (f | π(exp_M θ(X, ξ)) φ) by direct quadrature over `grid`; slow reference.
cd ambiguity_direct(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
                    const Vec& x, const Vec& xi, const GridSpec& grid);

/// 𝒲(f, φ)(Y, η) = ∫ e^{-i<η, X>} w(X, Y) dX on (position nodes Y) × (dual lattice of `fourier`).
PhaseSpaceFunction wigner(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
                          const GridSpec& position, const GridSpec& fourier,
                          std::int64_t budget = kDefaultSampleBudget);

/// σF(Y, η) = ∬ e^{-i(<η, X> - <ξ, Y>)} F(X, ξ) dX dξ/(2π)^n. Unitary and involutive.
PhaseSpaceFunction symplectic_fourier(const PhaseSpaceFunction& f);

/// ∬ F(X, ξ) π(exp_M θ(X, ξ)) φ dX dξ/(2π)^n sampled on `grid`. For F = 𝒜_{φ₀} f it equals (φ | φ₀) f.
GridFunction reconstruct(const MagneticSetting& s, const PhaseSpaceFunction& f, const AnalyticTestFunction& phi,
                         const GridSpec& grid);

/// A function on the dual lattice of `grid`.
struct DualGridFunction {
  GridSpec grid;
  Eigen::VectorXcd values;
};

/// Γ(η) = ∫ W(Y, η) dY.
DualGridFunction gamma_marginal(const PhaseSpaceFunction& w);

/// Σ_ξ c(ξ) e^{sign·i<ξ, v>} over the dual lattice of `grid`, contracted one axis at a time. The
/// Nyquist node enters as cos(<ξ, v>).
cd dual_exponential_sum(const GridSpec& grid, const cd* coeffs, const Vec& v, int sign);

/// ‖f‖ in M^{p,q}_φ: mixed_norm(𝒜_φ f, p, q).
double modulation_norm(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
                       double p, double q, const GridSpec& position, const GridSpec& fourier);

}  // namespace magweyl
