#include "magweyl/functions.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace magweyl {

AnalyticTestFunction AnalyticTestFunction::gaussian(const Vec& center, const Eigen::MatrixXd& precision,
                                                    const Vec& modulation, Polynomial<cd> prefactor) {
  const int n = static_cast<int>(center.size());
  require(precision.rows() == n && precision.cols() == n && modulation.size() == n && prefactor.nvars() == n,
          Errc::dimension_mismatch, "Gaussian descriptor dimensions disagree");
  require((precision - precision.transpose()).norm() <= 1e-12 * (1.0 + precision.norm()), Errc::parameter_violation,
          "Gaussian precision matrix must be symmetric");
  AnalyticTestFunction f;
  f.dim_ = n;
  f.terms_.push_back({center, precision, modulation, std::move(prefactor)});
  f.compile();
  return f;
}

AnalyticTestFunction AnalyticTestFunction::gaussian(const Vec& center, const Eigen::MatrixXd& precision) {
  const int n = static_cast<int>(center.size());
  return gaussian(center, precision, Vec::Zero(n), Polynomial<cd>::constant(n, 1.0));
}

AnalyticTestFunction AnalyticTestFunction::standard_gaussian(int dim) {
  return gaussian(Vec::Zero(dim), Eigen::MatrixXd::Identity(dim, dim));
}

AnalyticTestFunction AnalyticTestFunction::plane_wave(const Vec& modulation) {
  const int n = static_cast<int>(modulation.size());
  return gaussian(Vec::Zero(n), Eigen::MatrixXd::Zero(n, n), modulation, Polynomial<cd>::constant(n, 1.0));
}

AnalyticTestFunction AnalyticTestFunction::constant(int dim, cd value) {
  return gaussian(Vec::Zero(dim), Eigen::MatrixXd::Zero(dim, dim), Vec::Zero(dim), Polynomial<cd>::constant(dim, value));
}

AnalyticTestFunction AnalyticTestFunction::polynomial(Polynomial<cd> p) {
  const int n = p.nvars();
  return gaussian(Vec::Zero(n), Eigen::MatrixXd::Zero(n, n), Vec::Zero(n), std::move(p));
}

AnalyticTestFunction AnalyticTestFunction::custom(int dim, std::function<cd(const Vec&)> value,
                                                  std::function<CVec(const Vec&)> gradient, double decay_radius) {
  require(static_cast<bool>(value), Errc::parameter_violation, "custom test function needs an evaluator");
  AnalyticTestFunction f;
  f.dim_ = dim;
  f.custom_value_ = std::move(value);
  f.custom_gradient_ = std::move(gradient);
  f.custom_radius_ = decay_radius > 0.0 ? decay_radius : kInfinity;
  return f;
}

void AnalyticTestFunction::compile() {
  compiled_.clear();
  for (const Term& t : terms_) {
    Compiled c{CompiledPolynomial<cd>(t.prefactor), {}, t.precision.isZero(0.0), t.modulation.isZero(0.0)};
    for (int k = 0; k < dim_; ++k) c.dp.emplace_back(t.prefactor.derivative(k));
    compiled_.push_back(std::move(c));
  }
}

cd AnalyticTestFunction::value(const Vec& y) const {
  if (custom_value_) return custom_value_(y);
  cd acc(0.0);
  for (size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    const Compiled& c = compiled_[i];
    double re = 0.0, im = 0.0;
    if (!c.zero_precision) {
      const Vec d = y - t.center;
      re = -0.5 * d.dot(t.precision * d);
    }
    if (!c.zero_modulation) im = t.modulation.dot(y);
    acc += c.p(y) * std::exp(cd(re, im));
  }
  return acc;
}

CVec AnalyticTestFunction::gradient(const Vec& y) const {
  if (custom_value_) {
    require(static_cast<bool>(custom_gradient_), Errc::gradient_unavailable, "test function has no gradient");
    return custom_gradient_(y);
  }
  CVec g = CVec::Zero(dim_);
  for (size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    const Compiled& c = compiled_[i];
    const Vec d = y - t.center;
    const Vec md = t.precision * d;
    const cd e = std::exp(cd(-0.5 * d.dot(md), t.modulation.dot(y)));
    const cd p = c.p(y);
    for (int k = 0; k < dim_; ++k) g(k) += (c.dp[k](y) + p * cd(-md(k), t.modulation(k))) * e;
  }
  return g;
}

double AnalyticTestFunction::decay_radius() const {
  if (custom_value_) return custom_radius_;
  double r = 0.0;
  for (const Term& t : terms_) {
    if (t.prefactor.is_zero()) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.precision, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin <= 0.0) return kInfinity;
    r = std::max(r, t.center.norm() + std::sqrt(2.0 * (37.0 + 2.0 * t.prefactor.degree()) / lmin));
  }
  return r;
}

AnalyticTestFunction& AnalyticTestFunction::operator*=(cd s) {
  if (custom_value_) {
    auto v = custom_value_;
    custom_value_ = [v, s](const Vec& y) { return s * v(y); };
    if (custom_gradient_) {
      auto g = custom_gradient_;
      custom_gradient_ = [g, s](const Vec& y) -> CVec { return s * g(y); };
    }
    return *this;
  }
  for (Term& t : terms_) t.prefactor *= s;
  compile();
  return *this;
}

AnalyticTestFunction operator+(const AnalyticTestFunction& a, const AnalyticTestFunction& b) {
  require(a.dim_ == b.dim_, Errc::dimension_mismatch, "test function dimensions differ");
  if (a.custom_value_ || b.custom_value_) {
    const bool grad = a.has_gradient() && b.has_gradient();
    return AnalyticTestFunction::custom(
        a.dim_, [a, b](const Vec& y) { return a.value(y) + b.value(y); },
        grad ? std::function<CVec(const Vec&)>([a, b](const Vec& y) -> CVec { return a.gradient(y) + b.gradient(y); })
             : std::function<CVec(const Vec&)>{},
        std::max(a.decay_radius(), b.decay_radius()));
  }
  AnalyticTestFunction r = a;
  r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
  r.compile();
  return r;
}

GridFunction sample(const AnalyticTestFunction& f, const GridSpec& grid) {
  require(f.dim() == grid.dim(), Errc::dimension_mismatch, "function and grid dimensions differ");
  GridFunction g{grid, Eigen::VectorXcd(grid.size()), 0.0};
  parallel_for(grid.size(), [&](std::int64_t i) { g.values(i) = f(grid.node(i)); });
  double peak = 0.0, edge = 0.0;
  for (std::int64_t i = 0; i < grid.size(); ++i) {
    const double m = std::abs(g.values(i));
    peak = std::max(peak, m);
    if (grid.is_boundary(i)) edge = std::max(edge, m);
  }
  g.tail_ratio = peak > 0.0 ? edge / peak : 0.0;
  if (g.tail_ratio > 1e-10) {
    std::ostringstream os;
    os << "sampled function is not resolved by the grid: boundary/peak = " << g.tail_ratio;
    warn(os.str());
  }
  return g;
}

cd inner_product(const GridFunction& f, const GridFunction& g) {
  require(f.grid == g.grid, Errc::grid_mismatch, "inner product of functions on different grids");
  return (f.values.array() * g.values.array().conjugate()).sum() * f.grid.cell_volume();
}

double l2_norm(const GridFunction& f) { return std::sqrt(f.values.squaredNorm() * f.grid.cell_volume()); }

namespace {
void check_exponent(double p) {
  require(p >= 1.0 && !std::isnan(p), Errc::invalid_exponent, "exponent must lie in [1, ∞]");
}
}  // namespace

double mixed_norm(const PhaseSpaceFunction& f, double p, double q) {
  check_exponent(p);
  check_exponent(q);
  const double dx = f.position.cell_volume();
  const double dxi = f.fourier.dual_cell_volume();
  const Eigen::Index rows = f.values.rows();
  Eigen::VectorXd inner(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto a = f.values.row(r).array().abs();
    inner(r) = std::isinf(q) ? a.maxCoeff() : std::pow(a.pow(q).sum() * dxi, 1.0 / q);
  }
  if (std::isinf(p)) return inner.maxCoeff();
  return std::pow(inner.array().pow(p).sum() * dx, 1.0 / p);
}

double lp_norm(const PhaseSpaceFunction& f, double p) {
  check_exponent(p);
  if (std::isinf(p)) return f.values.cwiseAbs().maxCoeff();
  return std::pow(f.values.array().abs().pow(p).sum() * f.cell_volume(), 1.0 / p);
}

cd inner_product(const PhaseSpaceFunction& f, const PhaseSpaceFunction& g) {
  require(f.position == g.position && f.fourier == g.fourier, Errc::grid_mismatch,
          "inner product of phase-space functions on different grids");
  return (f.values.array() * g.values.array().conjugate()).sum() * f.cell_volume();
}

}  // namespace magweyl
