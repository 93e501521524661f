#include <doctest.h>

#include "magweyl/presets.hpp"
#include "magweyl/transforms.hpp"
#include "magweyl/uncertainty.hpp"
#include "oracles.hpp"

using namespace magweyl;

namespace {

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::io_failure;
}

double closed_form_concentration(double eps, int n, int samples) {
  double best = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double p = 2.0 * std::pow(32.0, double(k) / samples);
    best = std::max(best, std::pow(1 - eps, p / (p - 2)) * std::pow(p / 2, 2.0 * n / (p - 2)));
  }
  return best;
}

}  // namespace

TEST_CASE("hyperplane certificates") {
  const Algebra h3 = preset_algebra("heisenberg3");
  const Vec xi(Eigen::Vector3d(0.2, 0.1, 0.7));

  const HyperplaneCertificate central = hyperplane_constant(h3, xi, h3.basis(2));
  CHECK(central.valid);
  CHECK(central.c0 == doctest::Approx(0.7));

  const HyperplaneCertificate bad = check_hyperplane(h3, xi, h3.basis(0));
  CHECK(!bad.valid);
  CHECK(bad.residual > 0.1);
  CHECK(error_of([&] { hyperplane_constant(h3, xi, h3.basis(0)); }) == Errc::certificate_failed);

  const Vec flat(Eigen::Vector3d(0.4, -1.0, 0.0));
  std::mt19937_64 rng(61);
  for (int t = 0; t < 10; ++t) {
    const Vec x0 = oracle::normal_vec(rng, 3);
    const HyperplaneCertificate c = check_hyperplane(h3, flat, x0);
    CHECK(c.valid);
    CHECK(c.c0 == doctest::Approx(flat.dot(x0)));
  }

  for (const char* name : {"heisenberg3", "filiform4"}) {
    const Algebra alg = preset_algebra(name);
    for (int j = 0; j < alg.dim(); ++j)
      for (int k = 0; k <= j; ++k) {
        const HyperplaneCertificate c = check_hyperplane(alg, alg.basis(k), alg.basis(j));
        CHECK(c.valid);
        CHECK(c.c0 == (j == k ? 1.0 : 0.0));
      }
  }
}

TEST_CASE("commutator defect for certified pairs") {
  std::mt19937_64 rng(62);
  std::vector<Vec> probes3, probes2;
  for (int t = 0; t < 16; ++t) {
    probes3.push_back(oracle::normal_vec(rng, 3));
    probes2.push_back(oracle::normal_vec(rng, 2));
  }
  SUBCASE("Jordan-Hölder pattern on h3") {
    PolynomialVector<double> comps(3, Polynomial<double>(3));
    comps[2] = Polynomial<double>::variable(3, 0) * 0.5;
    comps[0] = Polynomial<double>::variable(3, 1) * -0.2;
    const MagneticSetting s(preset_algebra("heisenberg3"), MagneticPotential(comps));
    const AnalyticTestFunction f = AnalyticTestFunction::gaussian(Vec(Eigen::Vector3d(0.1, 0.2, -0.1)),
                                                                   Eigen::Matrix3d::Identity() * 0.6);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k <= j; ++k) {
        const HyperplaneCertificate c = hyperplane_constant(s.algebra, s.algebra.basis(k), s.algebra.basis(j));
        CHECK(commutator_defect(s, c, f, probes3) < 1e-8);
      }
  }
  SUBCASE("canonical commutation on abelian R^2 with and without a field") {
    const AnalyticTestFunction f = AnalyticTestFunction::standard_gaussian(2);
    for (double b : {0.0, 0.8}) {
      Eigen::Matrix2d m;
      m << 0, -b, b, 0;
      const MagneticSetting s(preset_algebra("abelian2"), MagneticPotential::linear(m));
      const HyperplaneCertificate c = hyperplane_constant(s.algebra, Vec::Unit(2, 0), Vec::Unit(2, 0));
      CHECK(c.c0 == 1.0);
      CHECK(commutator_defect(s, c, f, probes2) < 1e-10);
    }
  }
  const MagneticSetting h3(preset_algebra("heisenberg3"));
  const HyperplaneCertificate invalid = check_hyperplane(h3.algebra, Vec(Eigen::Vector3d(0, 0, 1)), h3.algebra.basis(0));
  CHECK(error_of([&] { commutator_defect(h3, invalid, AnalyticTestFunction::standard_gaussian(3), probes3); }) ==
        Errc::certificate_failed);
}

TEST_CASE("Heisenberg product") {
  const MagneticSetting s(preset_algebra("abelian1"));
  const GridSpec g = GridSpec::uniform(1, 10.0, 128);
  const HyperplaneCertificate c = hyperplane_constant(s.algebra, Vec::Ones(1), Vec::Ones(1));
  const InequalitySides minimizer = heisenberg_product(s, c, AnalyticTestFunction::standard_gaussian(1), g);
  CHECK(minimizer.rhs == 0.5);
  CHECK(std::abs(minimizer.lhs - 0.5) < 1e-6);
  for (double w : {0.3, 0.7, 2.0, 3.5}) {
    const InequalitySides d =
        heisenberg_product(s, c, AnalyticTestFunction::gaussian(Vec::Zero(1), Eigen::MatrixXd::Constant(1, 1, w)), g);
    CHECK(d.lhs >= d.rhs - 1e-6);
    CHECK(std::abs(d.lhs - 0.5) < 1e-6);  // centered Gaussians are all minimizers
  }
}

TEST_CASE("exponent algebra and Lieb constants") {
  CHECK(conjugate_exponent(2.0) == 2.0);
  CHECK(conjugate_exponent(3.0) == doctest::Approx(1.5));
  CHECK(std::isinf(conjugate_exponent(1.0)));
  CHECK(conjugate_exponent(kInfinity) == 1.0);
  CHECK(babenko_beckner(2.0) == doctest::Approx(1.0));
  CHECK(babenko_beckner(1.0) == 1.0);
  CHECK(babenko_beckner(kInfinity) == 1.0);
  for (double l : {1.2, 1.5, 3.0, 7.0}) {
    CHECK(babenko_beckner(l) * babenko_beckner(conjugate_exponent(l)) == doctest::Approx(1.0));
    const double lc = l / (l - 1);
    CHECK(babenko_beckner(l) == doctest::Approx(std::sqrt(std::pow(l, 1 / l) / std::pow(lc, 1 / lc))));
  }
  CHECK(lieb_lp_constant(1.0, 3) == 1.0);
  CHECK(lieb_lp_constant(2.0, 1) == doctest::Approx(std::sqrt(0.5)));
  CHECK(lieb_lp_constant(4.0, 2) == doctest::Approx(0.5));

  // p_j = 2, r_j = s_j = 4: α = β = γ = 3/2 per factor
  const double a32 = std::sqrt(std::pow(1.5, 1 / 1.5) / std::pow(3.0, 1 / 3.0));
  for (int n = 1; n <= 3; ++n) CHECK(lieb_constant(LiebParameters{}, n) == doctest::Approx(std::pow(a32, 6 * n)));
  CHECK(lieb_constant(LiebParameters{}, 1) == doctest::Approx(0.75));

  const LiebParameters mixed{2, 2, 4, 4, 3, 6};
  CHECK(mixed.p() == doctest::Approx(2.0));
  CHECK(mixed.q() == doctest::Approx(2.0));
  CHECK(1 / mixed.t1() == doctest::Approx(1 / 4.0 + 2 / 3.0 - 1 / 2.0));
  CHECK(lieb_constant(mixed, 1) > 0.0);
  CHECK(lieb_constant(mixed, 1) <= 1.0);

  CHECK(error_of([] { LiebParameters{1.0, 2, 4, 4, 4, 4}.validate(); }) == Errc::parameter_violation);
  CHECK(error_of([] { LiebParameters{3.0, 2, 2.5, 4, 4, 4}.validate(); }) == Errc::parameter_violation);
  CHECK(error_of([] { LiebParameters{1.5, 2, 4, 4, 2.9, 4}.validate(); }) == Errc::parameter_violation);
  CHECK(error_of([] { lieb_lp_constant(0.5, 1); }) == Errc::invalid_exponent);
}

TEST_CASE("Lieb inequality") {
  const MagneticSetting s(preset_algebra("abelian1"));
  const GridSpec g = GridSpec::uniform(1, 8.0, 64);
  const AnalyticTestFunction phi = AnalyticTestFunction::standard_gaussian(1);
  // matched standard Gaussians saturate every p: ‖|𝒜|²‖_p = π p^{-1/p}
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
    const InequalitySides r = lieb_check(s, phi, phi, phi, phi, p, g, g);
    CHECK(r.lhs == doctest::Approx(M_PI * std::pow(p, -1 / p)).epsilon(1e-10));
    CHECK(r.rhs == doctest::Approx(M_PI * std::pow(p, -1 / p)).epsilon(1e-12));
  }
  const AnalyticTestFunction f = AnalyticTestFunction::gaussian(Vec::Constant(1, 0.5), Eigen::MatrixXd::Constant(1, 1, 2.0));
  const MagneticSetting sa(preset_algebra("abelian2"), MagneticPotential::linear(Eigen::Matrix2d{{0.0, -0.3}, {0.3, 0.0}}));
  const GridSpec g2 = GridSpec::uniform(2, 8.0, 48);
  const AnalyticTestFunction f2 = AnalyticTestFunction::gaussian(Vec::Constant(2, 0.3), Eigen::Matrix2d::Identity() * 1.6);
  const AnalyticTestFunction phi2 = AnalyticTestFunction::standard_gaussian(2);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const InequalitySides r = lieb_check(s, f, phi, phi, f, p, g, g);
    CHECK(r.lhs <= r.rhs * (1 + 1e-10));
    const InequalitySides r2 = lieb_check(sa, f2, phi2, phi2, f2, p, g2, g2);
    CHECK(r2.lhs <= r2.rhs * (1 + 1e-10));
  }
  const InequalitySides spot = lieb_mixed_check(s, LiebParameters{2, 2, 4, 4, 3, 6}, f, phi, phi, f, g, g);
  CHECK(spot.lhs <= spot.rhs);
  CHECK(spot.lhs > 0.0);
}

TEST_CASE("entropy") {
  const MagneticSetting s(preset_algebra("abelian1"));
  const GridSpec g = GridSpec::uniform(1, 10.0, 96);
  const AnalyticTestFunction phi = AnalyticTestFunction::standard_gaussian(1);
  // ρ = exp(-(x² + ξ²)/2), integrated by 2-D Simpson over [-12, 12]²
  const double oracle_value = oracle::simpson([](double u) {
    const double x = 24 * u - 12;
    return Eigen::Matrix<double, 1, 1>(oracle::simpson([x](double v) {
      const double xi = 24 * v - 12, e = 0.5 * (x * x + xi * xi);
      return Eigen::Matrix<double, 1, 1>(e * std::exp(-e) * 24 * 24 / (2 * M_PI));
    })(0));
  })(0);
  CHECK(oracle_value == doctest::Approx(1.0).epsilon(1e-9));
  const double matched = entropy(s, phi, phi, g, g);
  CHECK(matched == doctest::Approx(oracle_value).epsilon(1e-8));
  CHECK(matched >= 1 - 1e-3);
  const AnalyticTestFunction wide = AnalyticTestFunction::gaussian(Vec::Zero(1), Eigen::MatrixXd::Constant(1, 1, 0.2));
  CHECK(entropy(s, wide, phi, g, g) > matched + 0.1);
}

TEST_CASE("concentration") {
  CHECK(concentration_bound(1 - 1e-9, 2, 2, 1) < 1e-6);
  for (int n = 1; n <= 3; ++n)
    for (double eps : {0.1, 0.5, 0.9}) {
      const double coarse = concentration_bound(eps, 2, 2, n);
      const double fine = closed_form_concentration(eps, n, 10000);
      CHECK(coarse <= fine * (1 + 1e-6));
      CHECK(coarse >= fine * (1 - 1e-3));
    }
  CHECK(concentration_bound(0.2, 2, 2, 1) > concentration_bound(0.6, 2, 2, 1));
  const double general = concentration_bound(0.5, 1.5, 3.0, 1);
  CHECK(general > 0.0);
  CHECK(std::isfinite(general));
  CHECK(error_of([] { concentration_bound(0.0, 2, 2, 1); }) == Errc::parameter_violation);
  CHECK(error_of([] { concentration_bound(1.0, 2, 2, 1); }) == Errc::parameter_violation);

  const MagneticSetting s(preset_algebra("abelian1"));
  const GridSpec g = GridSpec::uniform(1, 8.0, 64);
  const AnalyticTestFunction phi = AnalyticTestFunction::standard_gaussian(1);
  const PhaseSpaceFunction a = ambiguity_full(s, phi, phi, g, g);
  PhaseSpaceFunction theta = a;
  theta.values = a.values.cwiseProduct(a.values.conjugate());
  for (double eps : {0.1, 0.5, 0.8})
    CHECK(greedy_support_measure(theta, eps, M_PI) >= concentration_bound(eps, 2, 2, 1));
}
