#pragma once

#include <functional>
#include <memory>

#include "magweyl/transforms.hpp"

namespace magweyl {

/// Symbol a on g × g*, tagged with its factorization so kernels can use closed forms.
class Symbol {
 public:
  enum class Kind {
    general,     // closed-form a(X, ξ); ξ-integral by quadrature over a dual lattice
    sampled,     // samples on a phase-space lattice; periodic interpolation in X
    position,    // a(X)
    momentum,    // a_{X0}(X, ξ) = <ξ, X0>
    dual,        // a(ξ) = exp(-½ ξᵀ Σ ξ)
    separable,   // a0(<ξ, X0>) with a0(t) = exp(-t² / (2 w²))
  };

  static Symbol general(std::function<cd(const Vec&, const Vec&)> a, GridSpec xi_lattice);
  static Symbol sampled(PhaseSpaceFunction a);
  static Symbol position(std::function<cd(const Vec&)> a);
  static Symbol momentum(const Vec& x0);
  static Symbol dual_gaussian(const Eigen::MatrixXd& covariance);
  static Symbol separable_gaussian(const Vec& x0, double width);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  cd operator()(const Vec& x, const Vec& xi) const;

  const Vec& x0() const { return x0_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  const std::function<cd(const Vec&)>& position_function() const { return position_; }
  const GridSpec& xi_lattice() const { return lattice_; }
  const PhaseSpaceFunction& samples() const { return *samples_; }

  /// Partial inverse Fourier transform b(X, U) = ∫ e^{i<ξ, U>} a(X, ξ) dξ/(2π)^n.
  cd partial_inverse_fourier(const Vec& x, const Vec& u) const;

 private:
  Kind kind_ = Kind::general;
  int dim_ = 0;
  std::function<cd(const Vec&, const Vec&)> general_;
  std::function<cd(const Vec&)> position_;
  std::shared_ptr<const PhaseSpaceFunction> samples_;
  GridSpec lattice_;
  Vec x0_;
  double width_ = 1.0;
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd covariance_inverse_;
  double gaussian_norm_ = 0.0;
  bool integrable_ = true;
};

/// K_a(X, Y) = α_A(X, Y) · b(Σ₁(X, Y), X*(-Y)).
cd kernel(const MagneticSetting& s, const Symbol& a, const Vec& x, const Vec& y);

/// (Op(a) f)(X) = Σ_Y K_a(X, Y) f(Y) ΔY; position symbols act by multiplication.
GridFunction op_apply(const MagneticSetting& s, const Symbol& a, const GridFunction& f);

/// (-i λ̇(X0) f)(Y) + <A_Y, X̄0(Y)> f(Y).
cd momentum_apply(const MagneticSetting& s, const Vec& x0, const AnalyticTestFunction& f, const Vec& y);

struct KernelMatrix {
  GridSpec grid;
  Eigen::MatrixXcd matrix;  // rows X, columns Y
  double cell_volume = 0.0;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const { return matrix * f * cell_volume; }
};

/// Dense kernel on the grid; limited to dim <= 2 and 128 points per axis.
KernelMatrix op_matrix(const MagneticSetting& s, const Symbol& a, const GridSpec& grid);

}  // namespace magweyl
