#include <doctest.h>

#include "magweyl/presets.hpp"
#include "magweyl/transforms.hpp"
#include "magweyl/weyl.hpp"
#include "oracles.hpp"

using namespace magweyl;

namespace {

using oracle::Quad;
using oracle::quad;

MagneticSetting abelian(int n, double strength) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  if (n == 1) m(0, 0) = strength;
  else {
    m(1, 0) = strength;
    m(0, 1) = -0.5 * strength;
  }
  return MagneticSetting(preset_algebra("abelian" + std::to_string(n)), MagneticPotential::linear(m));
}

double moyal_defect(const MagneticSetting& s, const Quad& q, const GridSpec& gx, const GridSpec& gy) {
  const PhaseSpaceFunction a1 = ambiguity_full(s, q.f1, q.phi1, gx, gy);
  const PhaseSpaceFunction a2 = ambiguity_full(s, q.f2, q.phi2, gx, gy);
  const cd lhs = inner_product(a1, a2);
  const cd rhs = oracle::l2_pair(q.f1, q.f2) * std::conj(oracle::l2_pair(q.phi1, q.phi2));
  const double scale = oracle::l2_norm(q.f1) * oracle::l2_norm(q.f2) * oracle::l2_norm(q.phi1) * oracle::l2_norm(q.phi2);
  return std::abs(lhs - rhs) / scale;
}

}  // namespace

TEST_CASE("matched Gaussian ambiguity function in closed form") {
  const MagneticSetting s(preset_algebra("abelian1"));
  const GridSpec g = GridSpec::uniform(1, 8.0, 64);
  const AnalyticTestFunction phi = AnalyticTestFunction::standard_gaussian(1);
  const PhaseSpaceFunction a = ambiguity_full(s, phi, phi, g, g);
  double err = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int k = 0; k < 64; ++k) {
      const double x = g.coordinate(0, i), xi = g.dual_coordinate(0, k);
      err = std::max(err, std::abs(a.values(i, k) - std::sqrt(M_PI) * std::exp(-(x * x + xi * xi) / 4)));
    }
  CHECK(err < 1e-12);
  const std::int64_t o = g.origin_index();
  CHECK(std::abs(a.values(o, o) - std::sqrt(M_PI)) < 1e-14);
}

TEST_CASE("represent reduces to translation and modulation") {
  const MagneticSetting s(preset_algebra("abelian1"));
  const AnalyticTestFunction phi = AnalyticTestFunction::standard_gaussian(1);
  for (double x : {-0.5, 1.2})
    for (double xi : {0.0, 2.0})
      for (double y : {-1.0, 0.3}) {
        const cd expect = std::exp(cd(0, xi * (y - x / 2))) * std::exp(-(y - x) * (y - x) / 2);
        CHECK(std::abs(represent(s, phi, Vec::Constant(1, x), Vec::Constant(1, xi), Vec::Constant(1, y)) - expect) < 1e-15);
      }
}

TEST_CASE("direct quadrature agrees with the FFT slice") {
  const Quad q = quad(1);
  const MagneticSetting s = abelian(1, 0.7);
  const GridSpec gx = GridSpec::uniform(1, 8.0, 32), gy = GridSpec::uniform(1, 8.0, 64);
  const PhaseSpaceFunction a = ambiguity_full(s, q.f1, q.phi1, gx, gy);
  const GridSpec fine = GridSpec::uniform(1, 12.0, 512);
  for (int i : {3, 16, 20})
    for (int k : {10, 32, 40}) {
      const Vec x = gx.node(i), xi = gy.dual_node(k);
      CHECK(std::abs(a.values(i, k) - ambiguity_direct(s, q.f1, q.phi1, x, xi, fine)) < 1e-10);
    }
}

TEST_CASE("two-step warped integrand") {
  const Algebra h3 = preset_algebra("heisenberg3");
  PolynomialVector<double> comps(3, Polynomial<double>(3));
  comps[0] = Polynomial<double>::variable(3, 1) * 0.5;
  comps[2] = Polynomial<double>::variable(3, 0) * -0.3;
  const MagneticSetting s(h3, MagneticPotential(comps));
  const Quad q = quad(3);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const Vec x = oracle::normal_vec(rng, 3), y = oracle::normal_vec(rng, 3);
    const Vec z = bch(h3, Vec(0.5 * x), y);
    const cd expect = std::conj(tau(h3, s.potential, x, z)) * q.f1(z) * std::conj(q.phi1(bch(h3, Vec(-0.5 * x), y)));
    CHECK(std::abs(warped_integrand(s, q.f1, q.phi1, x, y) - expect) < 1e-13);
  }
}

TEST_CASE("Moyal identity against the Gauss-Hermite oracle") {
  SUBCASE("abelian R^1") {
    const GridSpec g = GridSpec::uniform(1, 8.0, 64);
    for (double b : {0.0, 0.7}) CHECK(moyal_defect(abelian(1, b), quad(1), g, g) < 1e-10);
  }
  SUBCASE("abelian R^2") {
    const GridSpec g = GridSpec::uniform(2, 8.0, 64);
    for (double b : {0.0, 0.4}) CHECK(moyal_defect(abelian(2, b), quad(2), g, g) < 1e-10);
  }
  SUBCASE("heisenberg3 at 12 points per axis") {
    PolynomialVector<double> comps(3, Polynomial<double>(3));
    comps[1] = Polynomial<double>::variable(3, 0) * 0.2;
    const MagneticSetting s(preset_algebra("heisenberg3"), MagneticPotential(comps));
    const double d = moyal_defect(s, quad(3), GridSpec::uniform(3, 5.0, 12), GridSpec::uniform(3, 3.5, 12));
    MESSAGE("h3 Moyal defect " << d);
    CHECK(d < 1e-3);
  }
}

TEST_CASE("symplectic Fourier transform") {
  const Quad q = quad(1);
  const MagneticSetting s = abelian(1, 0.7);
  const GridSpec gx = GridSpec::uniform(1, 8.0, 64), gy = GridSpec::uniform(1, 7.0, 48);
  const PhaseSpaceFunction a = ambiguity_full(s, q.f1, q.phi1, gx, gy);
  const PhaseSpaceFunction w = symplectic_fourier(a);
  CHECK(w.position == gy);
  CHECK(w.fourier == gx);
  CHECK(lp_norm(w, 2.0) == doctest::Approx(lp_norm(a, 2.0)).epsilon(1e-13));
  const PhaseSpaceFunction back = symplectic_fourier(w);
  CHECK((back.values - a.values).norm() < 1e-12 * a.values.norm());
  const PhaseSpaceFunction direct = wigner(s, q.f1, q.phi1, gy, gx);
  CHECK((direct.values - w.values).norm() < 1e-10 * w.values.norm());
}

TEST_CASE("Wigner marginals") {
  const Quad q = quad(1);
  const MagneticSetting s = abelian(1, 0.0);
  const GridSpec gy = GridSpec::uniform(1, 8.0, 64), gx = GridSpec::uniform(1, 8.0, 64);
  const PhaseSpaceFunction w = wigner(s, q.f1, q.phi1, gy, gx);
  const Eigen::VectorXcd ym = w.values.rowwise().sum() * gx.dual_cell_volume();
  double peak = 0.0;
  for (int j = 0; j < 64; ++j) peak = std::max(peak, std::abs(q.f1(gy.node(j)) * std::conj(q.phi1(gy.node(j)))));
  for (int j = 0; j < 64; ++j) {
    const cd expect = q.f1(gy.node(j)) * std::conj(q.phi1(gy.node(j)));
    if (std::abs(expect) >= 1e-8 * peak) CHECK(std::abs(ym(j) - expect) <= 1e-6 * std::abs(expect));
  }
  const DualGridFunction gam = gamma_marginal(w);
  CHECK(std::abs(gam.values.sum() * gam.grid.dual_cell_volume() - oracle::l2_pair(q.f1, q.phi1)) < 1e-12);

  // matched standard Gaussians: Γ = |f̂|²
  const AnalyticTestFunction g = AnalyticTestFunction::standard_gaussian(1);
  const GridSpec wide = GridSpec::uniform(1, 12.0, 96);
  const DualGridFunction gg = gamma_marginal(wigner(s, g, g, wide, wide));
  for (int k = 0; k < 96; ++k) {
    const double eta = gg.grid.dual_coordinate(0, k);
    CHECK(std::abs(gg.values(k) - 2 * M_PI * std::exp(-eta * eta)) < 1e-12);
  }
}

TEST_CASE("reconstruction recovers f up to the window overlap") {
  const Quad q = quad(1);
  const MagneticSetting s = abelian(1, 0.7);
  const GridSpec g = GridSpec::uniform(1, 8.0, 64);
  const PhaseSpaceFunction a = ambiguity_full(s, q.f1, q.phi1, g, g);
  const GridFunction r = reconstruct(s, a, q.phi2, g);
  const Eigen::VectorXcd expect = oracle::l2_pair(q.phi2, q.phi1) * sample(q.f1, g).values;
  CHECK((r.values - expect).norm() <= 1e-6 * expect.norm());
}

TEST_CASE("adjoint pairing of Op with the cross-Wigner distribution") {
  const Quad q = quad(1);
  const MagneticSetting s = abelian(1, 0.7);
  const GridSpec g = GridSpec::uniform(1, 8.0, 64);
  const Symbol a = Symbol::dual_gaussian(Eigen::MatrixXd::Constant(1, 1, 0.8));
  const cd lhs = inner_product(op_apply(s, a, sample(q.f1, g)), sample(q.phi1, g));
  const PhaseSpaceFunction w = wigner(s, q.phi1, q.f1, g, g);
  PhaseSpaceFunction av = w;
  for (Eigen::Index i = 0; i < w.values.rows(); ++i)
    for (Eigen::Index k = 0; k < w.values.cols(); ++k) av.values(i, k) = a(w.position.node(i), w.fourier.dual_node(k));
  const cd rhs = inner_product(av, w);
  CHECK(std::abs(lhs - rhs) <= 1e-4 * std::abs(rhs));
}

TEST_CASE("a linear potential shears |A| along xi") {
  // ∫ <M γ, dγ> over [Y - X, Y] = <Mᵀ X, Y> - ½ <M X, X>, conjugated by the pairing
  const Quad q = quad(2);
  const MagneticSetting s0 = abelian(2, 0.0), s1 = abelian(2, 0.6);
  Eigen::Matrix2d m;
  m << 0.0, -0.3, 0.6, 0.0;
  const GridSpec fine = GridSpec::uniform(2, 9.0, 160);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 6; ++t) {
    const Vec x = oracle::normal_vec(rng, 2, 0.8), xi = oracle::normal_vec(rng, 2, 0.8);
    const cd a1 = ambiguity_direct(s1, q.f1, q.phi1, x, xi, fine);
    const cd a0 = ambiguity_direct(s0, q.f1, q.phi1, x, Vec(xi + m.transpose() * x), fine);
    CHECK(std::abs(std::abs(a1) - std::abs(a0)) < 1e-10);
  }
  const GridSpec g = GridSpec::uniform(2, 8.0, 32);
  const PhaseSpaceFunction a0 = ambiguity_full(s0, q.f1, q.phi1, g, g);
  const PhaseSpaceFunction a1 = ambiguity_full(s1, q.f1, q.phi1, g, g);
  CHECK(lp_norm(a1, 4.0) == doctest::Approx(lp_norm(a0, 4.0)).epsilon(1e-6));
}

TEST_CASE("sample budget") {
  const MagneticSetting s(preset_algebra("abelian2"));
  const GridSpec g = GridSpec::uniform(2, 4.0, 64);
  const AnalyticTestFunction phi = AnalyticTestFunction::standard_gaussian(2);
  try {
    ambiguity_full(s, phi, phi, g, g, 1000);
    FAIL("budget not enforced");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
}
