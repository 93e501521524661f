#include "magweyl/transforms.hpp"

#include <cmath>

namespace magweyl {

cd represent(const MagneticSetting& s, const AnalyticTestFunction& phi, const Vec& x, const Vec& xi, const Vec& y) {
  const Algebra& g = s.algebra;
  const double phase = tau_exponent(g, s.potential, x, y) - xi.dot(psi(g, x, Vec(-y)));
  return std::polar(1.0, phase) * phi(bch(g, Vec(-x), y));
}

cd warped_integrand(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
                    const Vec& x, const Vec& y) {
  const Algebra& g = s.algebra;
  const Vec z = -psi_inv(g, x, Vec(-y));
  const cd fz = f(z);
  if (fz == 0.0) return 0.0;
  return std::polar(1.0, -tau_exponent(g, s.potential, x, z)) * fz * std::conj(phi(bch(g, Vec(-x), z)));
}

namespace {

void check_dims(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi) {
  require(f.dim() == s.dim() && phi.dim() == s.dim(), Errc::dimension_mismatch,
          "test function and algebra dimensions differ");
}

void check_grid(const MagneticSetting& s, const GridSpec& g) {
  require(g.dim() == s.dim(), Errc::dimension_mismatch, "grid and algebra dimensions differ");
}

}  // namespace

AmbiguitySlice ambiguity(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
                         const Vec& x, const GridSpec& grid) {
  check_dims(s, f, phi);
  check_grid(s, grid);
  AmbiguitySlice slice{x, grid, Eigen::VectorXcd(grid.size())};
  for (std::int64_t j = 0; j < grid.size(); ++j) slice.values(j) = warped_integrand(s, f, phi, x, grid.node(j));
  dft_forward(grid, slice.values);
  return slice;
}

PhaseSpaceFunction ambiguity_full(const MagneticSetting& s, const AnalyticTestFunction& f,
                                  const AnalyticTestFunction& phi, const GridSpec& position, const GridSpec& fourier,
                                  std::int64_t budget) {
  check_dims(s, f, phi);
  check_grid(s, position);
  check_grid(s, fourier);
  require_budget(position.size() * fourier.size(), budget);
  PhaseSpaceFunction out{position, fourier, PhaseSpaceFunction::Matrix(position.size(), fourier.size())};
  parallel_for(position.size(), [&](std::int64_t r) {
    const Vec x = position.node(r);
    cd* row = out.values.row(r).data();
    for (std::int64_t j = 0; j < fourier.size(); ++j) row[j] = warped_integrand(s, f, phi, x, fourier.node(j));
    dft_forward(fourier, row);
  });
  return out;
}

cd ambiguity_direct(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
                    const Vec& x, const Vec& xi, const GridSpec& grid) {
  check_dims(s, f, phi);
  check_grid(s, grid);
  cd acc = 0.0;
  for (std::int64_t j = 0; j < grid.size(); ++j) {
    const Vec y = grid.node(j);
    acc += f(y) * std::conj(represent(s, phi, x, xi, y));
  }
  return acc * grid.cell_volume();
}

PhaseSpaceFunction wigner(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
                          const GridSpec& position, const GridSpec& fourier, std::int64_t budget) {
  check_dims(s, f, phi);
  check_grid(s, position);
  check_grid(s, fourier);
  require_budget(position.size() * fourier.size(), budget);
  PhaseSpaceFunction out{position, fourier, PhaseSpaceFunction::Matrix(position.size(), fourier.size())};
  parallel_for(position.size(), [&](std::int64_t r) {
    const Vec y = position.node(r);
    cd* row = out.values.row(r).data();
    for (std::int64_t j = 0; j < fourier.size(); ++j) row[j] = warped_integrand(s, f, phi, fourier.node(j), y);
    dft_forward(fourier, row);
  });
  return out;
}

PhaseSpaceFunction symplectic_fourier(const PhaseSpaceFunction& f) {
  require(f.values.rows() == f.position.size() && f.values.cols() == f.fourier.size(), Errc::grid_mismatch,
          "phase-space array shape does not match its grids");
  require(f.position.dim() == f.fourier.dim(), Errc::grid_mismatch, "phase-space grids differ in dimension");
  // inverse transform ξ -> Y along rows, then forward X -> η along the transposed rows
  PhaseSpaceFunction::Matrix g = f.values;
  parallel_for(g.rows(), [&](std::int64_t r) { dft_inverse(f.fourier, g.row(r).data()); });
  PhaseSpaceFunction out{f.fourier, f.position, g.transpose()};
  parallel_for(out.values.rows(), [&](std::int64_t r) { dft_forward(f.position, out.values.row(r).data()); });
  return out;
}

cd dual_exponential_sum(const GridSpec& grid, const cd* coeffs, const Vec& v, int sign) {
  using RowMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  thread_local std::vector<cd> a, b;
  thread_local Eigen::VectorXcd e;
  const cd* in = coeffs;
  std::int64_t len = grid.size();
  for (int axis = grid.dim() - 1; axis >= 0; --axis) {
    const int n = grid.points(axis);
    e.resize(n);
    const cd step = std::polar(1.0, sign * grid.dual_spacing(axis) * v(axis));
    cd cur = std::polar(1.0, sign * grid.dual_coordinate(axis, 0) * v(axis));
    for (int k = 0; k < n; ++k) {
      // re-anchor periodically to keep the recurrence accurate
      if (k % 16 == 0) cur = std::polar(1.0, sign * grid.dual_coordinate(axis, k) * v(axis));
      e(k) = cur;
      cur *= step;
    }
    // the unpaired Nyquist node contributes cos, so real data with v -> -v gives the conjugate
    e(0) = std::cos(grid.dual_coordinate(axis, 0) * v(axis));
    const std::int64_t rows = len / n;
    std::vector<cd>& out = (in == a.data()) ? b : a;
    out.resize(static_cast<size_t>(std::max<std::int64_t>(rows, 1)));
    Eigen::Map<Eigen::VectorXcd>(out.data(), rows).noalias() = Eigen::Map<const RowMat>(in, rows, n) * e;
    in = out.data();
    len = rows;
  }
  return in[0];
}

GridFunction reconstruct(const MagneticSetting& s, const PhaseSpaceFunction& f, const AnalyticTestFunction& phi,
                         const GridSpec& grid) {
  require(phi.dim() == s.dim(), Errc::dimension_mismatch, "window and algebra dimensions differ");
  check_grid(s, grid);
  check_grid(s, f.position);
  const Algebra& g = s.algebra;
  const double weight = f.position.cell_volume() * f.fourier.dual_cell_volume();
  GridFunction out{grid, Eigen::VectorXcd::Zero(grid.size()), 0.0};
  parallel_for(grid.size(), [&](std::int64_t j) {
    const Vec y = grid.node(j);
    cd acc = 0.0;
    for (std::int64_t r = 0; r < f.position.size(); ++r) {
      const Vec x = f.position.node(r);
      const cd window = phi(bch(g, Vec(-x), y));
      if (window == 0.0) continue;
      const cd sum = dual_exponential_sum(f.fourier, f.values.row(r).data(), psi(g, x, Vec(-y)), -1);
      acc += std::polar(1.0, tau_exponent(g, s.potential, x, y)) * window * sum;
    }
    out.values(j) = acc * weight;
  });
  return out;
}

DualGridFunction gamma_marginal(const PhaseSpaceFunction& w) {
  DualGridFunction out{w.fourier, w.values.colwise().sum().transpose() * w.position.cell_volume()};
  return out;
}

double modulation_norm(const MagneticSetting& s, const AnalyticTestFunction& f, const AnalyticTestFunction& phi,
                       double p, double q, const GridSpec& position, const GridSpec& fourier) {
  return mixed_norm(ambiguity_full(s, f, phi, position, fourier), p, q);
}

}  // namespace magweyl
