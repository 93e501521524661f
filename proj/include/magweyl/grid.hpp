#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "magweyl/algebra.hpp"

namespace magweyl {

using cd = std::complex<double>;

/// Uniform lattice on the box Π[-L_a, L_a) with N_a (even) nodes per axis:
/// nodes -L_a + j h_a, h_a = 2 L_a / N_a, so 0 is always a node.
/// The dual lattice has spacing 2π / (N_a h_a) and nodes (k - N_a/2) 2π / (N_a h_a).
/// Measures: dY on g, dξ / (2π)^n on g*, which makes the Fourier transform unitary.
class GridSpec {
 public:
  GridSpec() = default;
  GridSpec(std::vector<double> half_widths, std::vector<int> points);
  /// Same half-width and point count on every axis.
  static GridSpec uniform(int dim, double half_width, int points);

  int dim() const { return static_cast<int>(points_.size()); }
  const std::vector<double>& half_widths() const { return half_widths_; }
  const std::vector<int>& points() const { return points_; }
  int points(int axis) const { return points_[axis]; }
  double spacing(int axis) const { return 2.0 * half_widths_[axis] / points_[axis]; }
  double dual_spacing(int axis) const { return 2.0 * std::numbers::pi / (points_[axis] * spacing(axis)); }
  /// Lebesgue cell volume Π h_a.
  double cell_volume() const;
  /// Dual cell volume Π Δξ_a / (2π) = Π 1 / (N_a h_a).
  double dual_cell_volume() const;
  std::int64_t size() const;

  double coordinate(int axis, int j) const { return -half_widths_[axis] + j * spacing(axis); }
  double dual_coordinate(int axis, int k) const { return (k - points_[axis] / 2) * dual_spacing(axis); }

  /// Flat (row-major, last axis fastest) index <-> multi-index.
  std::vector<int> unravel(std::int64_t flat) const;
  std::int64_t ravel(const std::vector<int>& idx) const;
  std::int64_t stride(int axis) const;

  Vec node(std::int64_t flat) const;
  Vec dual_node(std::int64_t flat) const;
  /// Index of the node at the origin.
  std::int64_t origin_index() const;
  bool is_boundary(std::int64_t flat) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.half_widths_ == b.half_widths_ && a.points_ == b.points_;
  }

 private:
  std::vector<double> half_widths_;
  std::vector<int> points_;
};

/// Samples of a function on a GridSpec.
struct GridFunction {
  GridSpec grid;
  Eigen::VectorXcd values;
  /// Largest boundary magnitude over the peak magnitude at sampling time.
  double tail_ratio = 0.0;
};

/// Samples on (position grid) × (dual lattice of `fourier`). Row = position node,
/// column = dual node, both in the flat order of their grids.
struct PhaseSpaceFunction {
  using Matrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  GridSpec position;
  GridSpec fourier;
  Matrix values;

  /// dX dξ / (2π)^n for one lattice cell.
  double cell_volume() const { return position.cell_volume() * fourier.dual_cell_volume(); }
};

/// Uniform upper bound on stored phase-space samples.
inline constexpr std::int64_t kDefaultSampleBudget = std::int64_t(1) << 28;

void require_budget(std::int64_t samples, std::int64_t budget = kDefaultSampleBudget);

/// Σ_j e^{-i<ξ_k, Y_j>} g_j ΔY over the grid, in place (input on nodes, output on dual nodes).
void dft_forward(const GridSpec& grid, cd* data);
/// Σ_k e^{+i<ξ_k, Y_j>} G_k Δξ/(2π)^n, the exact inverse of dft_forward.
void dft_inverse(const GridSpec& grid, cd* data);

inline void dft_forward(const GridSpec& grid, Eigen::VectorXcd& v) { dft_forward(grid, v.data()); }
inline void dft_inverse(const GridSpec& grid, Eigen::VectorXcd& v) { dft_inverse(grid, v.data()); }

/// Periodic (band-limited) interpolation weights on one axis, Nyquist mode split as a cosine.
/// w_j(x) = sin(π t/h) / (N tan(π t/(N h))), t = x - x_j.
void periodic_interpolation_weights(const GridSpec& grid, int axis, double x, double* w);

/// Runs body(i) for i in [0, count) on a small thread pool; serial when one core is available.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body);

/// Sink for non-fatal diagnostics such as sampling tail warnings. Default writes to stderr.
void set_warning_sink(std::function<void(const std::string&)> sink);
void warn(const std::string& message);

}  // namespace magweyl
