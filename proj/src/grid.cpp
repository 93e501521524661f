#include "magweyl/grid.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>

#include <unsupported/Eigen/FFT>

namespace magweyl {

GridSpec::GridSpec(std::vector<double> half_widths, std::vector<int> points)
    : half_widths_(std::move(half_widths)), points_(std::move(points)) {
  require(!points_.empty() && points_.size() <= static_cast<size_t>(kMaxDim), Errc::dimension_mismatch,
          "grid dimension must lie in [1, 16]");
  require(half_widths_.size() == points_.size(), Errc::dimension_mismatch,
          "half_width and points must list one entry per axis");
  for (size_t a = 0; a < points_.size(); ++a) {
    require(points_[a] >= 2 && points_[a] % 2 == 0, Errc::parameter_violation, "points per axis must be even and >= 2");
    require(half_widths_[a] > 0.0 && std::isfinite(half_widths_[a]), Errc::parameter_violation,
            "half-width must be positive");
  }
}

GridSpec GridSpec::uniform(int dim, double half_width, int points) {
  return GridSpec(std::vector<double>(dim, half_width), std::vector<int>(dim, points));
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= spacing(a);
  return v;
}

double GridSpec::dual_cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v /= points_[a] * spacing(a);
  return v;
}

std::int64_t GridSpec::size() const {
  std::int64_t s = 1;
  for (int p : points_) s *= p;
  return s;
}

std::int64_t GridSpec::stride(int axis) const {
  std::int64_t s = 1;
  for (int b = dim() - 1; b > axis; --b) s *= points_[b];
  return s;
}

std::vector<int> GridSpec::unravel(std::int64_t flat) const {
  std::vector<int> idx(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % points_[a]);
    flat /= points_[a];
  }
  return idx;
}

std::int64_t GridSpec::ravel(const std::vector<int>& idx) const {
  std::int64_t flat = 0;
  for (int a = 0; a < dim(); ++a) flat = flat * points_[a] + idx[a];
  return flat;
}

Vec GridSpec::node(std::int64_t flat) const {
  Vec y(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    y(a) = coordinate(a, static_cast<int>(flat % points_[a]));
    flat /= points_[a];
  }
  return y;
}

Vec GridSpec::dual_node(std::int64_t flat) const {
  Vec xi(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    xi(a) = dual_coordinate(a, static_cast<int>(flat % points_[a]));
    flat /= points_[a];
  }
  return xi;
}

std::int64_t GridSpec::origin_index() const {
  std::vector<int> idx(dim());
  for (int a = 0; a < dim(); ++a) idx[a] = points_[a] / 2;
  return ravel(idx);
}

bool GridSpec::is_boundary(std::int64_t flat) const {
  for (int a = dim() - 1; a >= 0; --a) {
    const int j = static_cast<int>(flat % points_[a]);
    if (j == 0 || j == points_[a] - 1) return true;
    flat /= points_[a];
  }
  return false;
}

void require_budget(std::int64_t samples, std::int64_t budget) {
  require(samples <= budget, Errc::budget_exceeded,
          "request needs " + std::to_string(samples) + " samples, budget is " + std::to_string(budget));
}

namespace {

// One axis of the centred DFT: e^{∓i ξ_k Y_j} = e^{∓2πi jk/N} (-1)^{j+k+N/2}.
void dft_axis(const GridSpec& grid, cd* data, int axis, bool inverse) {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  const int n = grid.points(axis);
  const std::int64_t stride = grid.stride(axis);
  const std::int64_t total = grid.size();
  const std::int64_t block = stride * n;
  const double scale = inverse ? 1.0 / (n * grid.spacing(axis)) : grid.spacing(axis);
  const double shift_sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;
  std::vector<cd> in(n), out(n);
  for (std::int64_t base = 0; base < total; base += block)
    for (std::int64_t off = 0; off < stride; ++off) {
      cd* line = data + base + off;
      for (int j = 0; j < n; ++j) in[j] = (j % 2 == 0 ? 1.0 : -1.0) * line[j * stride];
      if (inverse)
        fft.inv(out.data(), in.data(), n);
      else
        fft.fwd(out.data(), in.data(), n);
      for (int k = 0; k < n; ++k) line[k * stride] = (k % 2 == 0 ? scale : -scale) * shift_sign * out[k];
    }
}

}  // namespace

void dft_forward(const GridSpec& grid, cd* data) {
  for (int a = 0; a < grid.dim(); ++a) dft_axis(grid, data, a, false);
}

void dft_inverse(const GridSpec& grid, cd* data) {
  for (int a = 0; a < grid.dim(); ++a) dft_axis(grid, data, a, true);
}

void periodic_interpolation_weights(const GridSpec& grid, int axis, double x, double* w) {
  const int n = grid.points(axis);
  const double h = grid.spacing(axis);
  const double period = n * h;
  for (int j = 0; j < n; ++j) {
    double t = x - grid.coordinate(axis, j);
    t -= period * std::round(t / period);
    const double u = t / h;
    if (std::abs(u) < 1e-12) {
      w[j] = 1.0;
      continue;
    }
    const double s = std::sin(std::numbers::pi * u);
    w[j] = std::abs(s) < 1e-15 ? 0.0 : s / (n * std::tan(std::numbers::pi * u / n));
  }
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<std::int64_t>(hw, count));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      try {
        for (std::int64_t i; (i = next.fetch_add(1)) < count;) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {
std::mutex sink_mutex;
std::function<void(const std::string&)>& sink() {
  static std::function<void(const std::string&)> s = [](const std::string& m) { std::cerr << "warning: " << m << '\n'; };
  return s;
}
}  // namespace

void set_warning_sink(std::function<void(const std::string&)> s) {
  std::lock_guard lock(sink_mutex);
  sink() = std::move(s);
}

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex);
  if (sink()) sink()(message);
}

}  // namespace magweyl
