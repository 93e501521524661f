#include "magweyl/weyl.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

namespace magweyl {

Symbol Symbol::general(std::function<cd(const Vec&, const Vec&)> a, GridSpec xi_lattice) {
  Symbol s;
  s.kind_ = Kind::general;
  s.dim_ = xi_lattice.dim();
  s.general_ = std::move(a);
  s.lattice_ = std::move(xi_lattice);
  return s;
}

Symbol Symbol::sampled(PhaseSpaceFunction a) {
  require(a.values.rows() == a.position.size() && a.values.cols() == a.fourier.size(), Errc::grid_mismatch,
          "sampled symbol shape does not match its grids");
  Symbol s;
  s.kind_ = Kind::sampled;
  s.dim_ = a.position.dim();
  s.lattice_ = a.fourier;
  s.samples_ = std::make_shared<const PhaseSpaceFunction>(std::move(a));
  return s;
}

Symbol Symbol::position(std::function<cd(const Vec&)> a) {
  Symbol s;
  s.kind_ = Kind::position;
  s.position_ = std::move(a);
  s.integrable_ = false;
  return s;
}

Symbol Symbol::momentum(const Vec& x0) {
  Symbol s;
  s.kind_ = Kind::momentum;
  s.dim_ = static_cast<int>(x0.size());
  s.x0_ = x0;
  s.integrable_ = false;
  return s;
}

Symbol Symbol::dual_gaussian(const Eigen::MatrixXd& covariance) {
  require(covariance.rows() == covariance.cols(), Errc::dimension_mismatch, "covariance must be square");
  Symbol s;
  s.kind_ = Kind::dual;
  s.dim_ = static_cast<int>(covariance.rows());
  s.covariance_ = covariance;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(covariance);
  const double det = covariance.determinant();
  s.integrable_ = lu.isInvertible() && det > 0.0;
  if (s.integrable_) {
    s.covariance_inverse_ = lu.inverse();
    s.gaussian_norm_ = std::pow(2.0 * std::numbers::pi, -0.5 * s.dim_) / std::sqrt(det);
  }
  return s;
}

Symbol Symbol::separable_gaussian(const Vec& x0, double width) {
  require(width > 0.0, Errc::parameter_violation, "separable symbol width must be positive");
  Symbol s = dual_gaussian(x0 * x0.transpose() / (width * width));
  s.kind_ = Kind::separable;
  s.x0_ = x0;
  s.width_ = width;
  return s;
}

cd Symbol::operator()(const Vec& x, const Vec& xi) const {
  switch (kind_) {
    case Kind::general: return general_(x, xi);
    case Kind::position: return position_(x);
    case Kind::momentum: return xi.dot(x0_);
    case Kind::dual: return std::exp(-0.5 * xi.dot(covariance_ * xi));
    case Kind::separable: {
      const double t = xi.dot(x0_) / width_;
      return std::exp(-0.5 * t * t);
    }
    case Kind::sampled: {
      // periodic interpolation in X at a dual node ξ; ξ must be a lattice node
      const auto& f = *samples_;
      std::int64_t col = 0;
      for (int a = 0; a < dim_; ++a) {
        const int k = static_cast<int>(std::lround(xi(a) / f.fourier.dual_spacing(a))) + f.fourier.points(a) / 2;
        require(k >= 0 && k < f.fourier.points(a), Errc::grid_mismatch, "ξ outside the symbol lattice");
        col = col * f.fourier.points(a) + k;
      }
      cd acc = 0.0;
      std::vector<std::vector<double>> w(dim_);
      for (int a = 0; a < dim_; ++a) {
        w[a].resize(f.position.points(a));
        periodic_interpolation_weights(f.position, a, x(a), w[a].data());
      }
      for (std::int64_t r = 0; r < f.position.size(); ++r) {
        double wr = 1.0;
        std::int64_t rem = r;
        for (int a = dim_ - 1; a >= 0; --a) {
          wr *= w[a][rem % f.position.points(a)];
          rem /= f.position.points(a);
        }
        if (wr != 0.0) acc += wr * f.values(r, col);
      }
      return acc;
    }
  }
  return 0.0;
}

cd Symbol::partial_inverse_fourier(const Vec& x, const Vec& u) const {
  require(integrable_, Errc::non_integrable_symbol, "symbol has no pointwise partial inverse Fourier transform");
  switch (kind_) {
    case Kind::dual:
    case Kind::separable:
      return gaussian_norm_ * std::exp(-0.5 * u.dot(covariance_inverse_ * u));
    case Kind::general: {
      thread_local std::vector<cd> c;
      c.resize(lattice_.size());
      for (std::int64_t k = 0; k < lattice_.size(); ++k) c[k] = general_(x, lattice_.dual_node(k));
      return dual_exponential_sum(lattice_, c.data(), u, +1) * lattice_.dual_cell_volume();
    }
    case Kind::sampled: {
      const auto& f = *samples_;
      thread_local Eigen::RowVectorXd weights;
      thread_local std::vector<double> axis_w;
      weights.setOnes(f.position.size());
      for (int a = 0; a < dim_; ++a) {
        const int n = f.position.points(a);
        axis_w.resize(n);
        periodic_interpolation_weights(f.position, a, x(a), axis_w.data());
        const std::int64_t stride = f.position.stride(a);
        for (std::int64_t r = 0; r < f.position.size(); ++r) weights(r) *= axis_w[(r / stride) % n];
      }
      const Eigen::RowVectorXcd row = weights.cast<cd>() * f.values;
      return dual_exponential_sum(f.fourier, row.data(), u, +1) * f.fourier.dual_cell_volume();
    }
    default: break;
  }
  throw Error(Errc::non_integrable_symbol, "symbol kind has no pointwise kernel");
}

cd kernel(const MagneticSetting& s, const Symbol& a, const Vec& x, const Vec& y) {
  require(a.kind() != Symbol::Kind::position && a.kind() != Symbol::Kind::momentum, Errc::non_integrable_symbol,
          "kernel of a position or momentum symbol is a distribution");
  const Algebra& g = s.algebra;
  const auto [p, u] = sigma(g, x, y);
  return std::polar(1.0, alpha_exponent(g, s.potential, x, y)) * a.partial_inverse_fourier(p, u);
}

GridFunction op_apply(const MagneticSetting& s, const Symbol& a, const GridFunction& f) {
  require(f.grid.dim() == s.dim(), Errc::dimension_mismatch, "function and algebra dimensions differ");
  GridFunction out{f.grid, Eigen::VectorXcd(f.grid.size()), 0.0};
  const GridSpec& grid = f.grid;
  if (a.kind() == Symbol::Kind::position) {
    for (std::int64_t i = 0; i < grid.size(); ++i) out.values(i) = a.position_function()(grid.node(i)) * f.values(i);
    return out;
  }
  require(a.kind() != Symbol::Kind::momentum, Errc::non_integrable_symbol,
          "momentum symbols act on analytic functions through momentum_apply");
  const double dy = grid.cell_volume();
  parallel_for(grid.size(), [&](std::int64_t i) {
    const Vec x = grid.node(i);
    cd acc = 0.0;
    for (std::int64_t j = 0; j < grid.size(); ++j)
      if (f.values(j) != 0.0) acc += kernel(s, a, x, grid.node(j)) * f.values(j);
    out.values(i) = acc * dy;
  });
  return out;
}

cd momentum_apply(const MagneticSetting& s, const Vec& x0, const AnalyticTestFunction& f, const Vec& y) {
  require(f.has_gradient(), Errc::gradient_unavailable, "momentum_apply needs the gradient of f");
  const Algebra& g = s.algebra;
  const cd ld = lambda_dot(g, x0, f, y);
  cd out = cd(0.0, -1.0) * ld;
  if (!s.potential.is_zero()) out += s.potential.pair(y, right_invariant_field(g, x0, y)) * f(y);
  return out;
}

KernelMatrix op_matrix(const MagneticSetting& s, const Symbol& a, const GridSpec& grid) {
  require(grid.dim() == s.dim(), Errc::dimension_mismatch, "grid and algebra dimensions differ");
  require(grid.dim() <= 2, Errc::budget_exceeded, "dense operator matrices are limited to dim <= 2");
  for (int p : grid.points()) require(p <= 128, Errc::budget_exceeded, "dense operator matrices allow <= 128 points per axis");
  const std::int64_t n = grid.size();
  KernelMatrix k{grid, Eigen::MatrixXcd::Zero(n, n), grid.cell_volume()};
  if (a.kind() == Symbol::Kind::position) {
    for (std::int64_t i = 0; i < n; ++i) k.matrix(i, i) = a.position_function()(grid.node(i)) / k.cell_volume;
    return k;
  }
  parallel_for(n, [&](std::int64_t i) {
    const Vec x = grid.node(i);
    for (std::int64_t j = 0; j < n; ++j) k.matrix(i, j) = kernel(s, a, x, grid.node(j));
  });
  return k;
}

}  // namespace magweyl
