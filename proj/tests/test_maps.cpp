#include <doctest.h>

#include "magweyl/maps.hpp"
#include "magweyl/magnetic.hpp"
#include "magweyl/presets.hpp"
#include "oracles.hpp"

using namespace magweyl;

namespace {

oracle::MatrixModel model_for(const std::string& name) {
  if (name == "heisenberg3") return oracle::heisenberg_model();
  if (name == "filiform4") return oracle::filiform_model();
  return oracle::abelian_model(preset_algebra(name).dim());
}

}  // namespace

TEST_CASE("psi and sigma1 against Simpson quadrature of the matrix-model product") {
  std::mt19937_64 rng(21);
  for (const char* name : {"abelian2", "heisenberg3", "filiform4"}) {
    const Algebra alg = preset_algebra(name);
    const oracle::MatrixModel m = model_for(name);
    for (int t = 0; t < 10; ++t) {
      const Vec x = oracle::normal_vec(rng, alg.dim()), y = oracle::normal_vec(rng, alg.dim());
      const Vec ps = oracle::simpson([&](double s) { return m.product(y, Vec(s * x)); });
      CHECK((psi(alg, x, y) - ps).norm() < 1e-9);
      const Vec w = m.product(y, Vec(-x));
      const Vec sg = oracle::simpson([&](double s) { return m.product(Vec(s * w), x); });
      CHECK((sigma1(alg, x, y) - sg).norm() < 1e-9);
    }
  }
}

TEST_CASE("closed forms for psi, psi_inv and sigma") {
  std::mt19937_64 rng(22);
  const Algebra ab = preset_algebra("abelian2");
  const Algebra h3 = preset_algebra("heisenberg3");
  for (int t = 0; t < 20; ++t) {
    const Vec x = oracle::normal_vec(rng, 2), y = oracle::normal_vec(rng, 2);
    CHECK((psi(ab, x, y) - (y + 0.5 * x)).norm() < 1e-15);
    CHECK((psi_inv(ab, x, y) - (y - 0.5 * x)).norm() < 1e-15);
    CHECK((sigma1(ab, x, y) - 0.5 * (x + y)).norm() < 1e-15);
    const auto [s1, s2] = sigma(ab, x, y);
    CHECK((s2 - (x - y)).norm() < 1e-15);

    const Vec a = oracle::normal_vec(rng, 3), b = oracle::normal_vec(rng, 3);
    CHECK((psi(h3, a, b) - bch(h3, b, Vec(0.5 * a))).norm() < 1e-14);
    CHECK((psi_inv(h3, a, b) - bch(h3, b, Vec(-0.5 * a))).norm() < 1e-14);
    CHECK((sigma(h3, a, b).second - bch(h3, a, Vec(-b))).norm() < 1e-15);
    const auto [d1, d2] = sigma(h3, a, a);
    CHECK((d1 - a).norm() < 1e-14);
    CHECK(d2.norm() < 1e-15);
  }
}

TEST_CASE("map identities on random probes") {
  std::mt19937_64 rng(23);
  for (const auto& name : preset_names()) {
    const Algebra alg = preset_algebra(name);
    const int n = alg.dim();
    double round_trip = 0.0, symmetry = 0.0, via_psi = 0.0, translation = 0.0;
    for (int t = 0; t < 200; ++t) {
      const Vec x = oracle::normal_vec(rng, n), y = oracle::normal_vec(rng, n);
      round_trip = std::max(round_trip, (psi(alg, x, psi_inv(alg, x, y)) - y).norm());
      round_trip = std::max(round_trip, (psi_inv(alg, x, psi(alg, x, y)) - y).norm());
      symmetry = std::max(symmetry, (sigma1(alg, x, y) - sigma1(alg, y, x)).norm());
      via_psi = std::max(via_psi, (sigma1(alg, x, y) + psi(alg, bch(alg, x, Vec(-y)), Vec(-x))).norm());
      translation = std::max(translation, (psi(alg, x, bch(alg, y, Vec(-x))) - psi(alg, Vec(-x), y)).norm());
    }
    INFO(name);
    CHECK(round_trip < 1e-12);
    CHECK(symmetry < 1e-12);
    CHECK(via_psi < 1e-12);
    CHECK(translation < 1e-12);
  }
}

TEST_CASE("psi is volume preserving") {
  std::mt19937_64 rng(24);
  const Algebra alg = preset_algebra("filiform4");
  const double h = 1e-5;
  for (int t = 0; t < 10; ++t) {
    const Vec x = oracle::normal_vec(rng, 4), y = oracle::normal_vec(rng, 4);
    Eigen::Matrix4d jac;
    for (int k = 0; k < 4; ++k) {
      const Vec e = h * Vec::Unit(4, k);
      jac.col(k) = (psi(alg, x, Vec(y + e)) - psi(alg, x, Vec(y - e))) / (2 * h);
    }
    CHECK(std::abs(jac.determinant() - 1.0) < 1e-8);
  }
}

TEST_CASE("right translation derivative closed forms") {
  std::mt19937_64 rng(25);
  const Algebra h3 = preset_algebra("heisenberg3");
  const Algebra ab = preset_algebra("abelian3");
  const Algebra fil = preset_algebra("filiform4");
  for (int t = 0; t < 10; ++t) {
    const Vec x = oracle::normal_vec(rng, 3), y = oracle::normal_vec(rng, 3);
    CHECK((right_translation_derivative(ab, x, y) - x).norm() == 0.0);
    CHECK((right_translation_derivative(h3, x, y) - (x + 0.5 * bracket(h3, x, y))).norm() < 1e-14);
    const Vec a = oracle::normal_vec(rng, 4), b = oracle::normal_vec(rng, 4);
    const double h = 1e-5;
    const Vec fd = (bch(fil, Vec(h * a), b) - bch(fil, Vec(-h * a), b)) / (2 * h);
    CHECK((right_translation_derivative(fil, a, b) - fd).norm() < 1e-8);
  }
}

TEST_CASE("theta0 expansions") {
  const Algebra ab = preset_algebra("abelian2");
  Eigen::Matrix2d m;
  m << 0, 0, 1, 0;  // A_Y = (0, y1)
  const MagneticPotential a = MagneticPotential::linear(m);
  const Vec x(Eigen::Vector2d(0.3, -0.8)), xi(Eigen::Vector2d(1.1, 0.4)), y(Eigen::Vector2d(-0.6, 0.9));
  const Polynomial<double> th = theta0(ab, a, x, xi);
  CHECK(th(y) == doctest::Approx(xi.dot(y) + y(0) * x(1)).epsilon(1e-15));
  CHECK(theta0(ab, a, Vec(Vec::Zero(2)), xi)(y) == doctest::Approx(xi.dot(y)));
  CHECK(theta0(ab, MagneticPotential(2), x, xi)(y) == doctest::Approx(xi.dot(y)));
}

TEST_CASE("tau closed form on abelian R^1") {
  const Algebra ab = preset_algebra("abelian1");
  const MagneticPotential a = MagneticPotential::linear(Eigen::Matrix<double, 1, 1>(1.0));
  for (double x : {-1.3, 0.2, 2.0})
    for (double y : {-0.7, 0.0, 1.9}) {
      const Vec vx = Vec::Constant(1, x), vy = Vec::Constant(1, y);
      CHECK(tau_exponent(ab, a, vx, vy) == doctest::Approx(x * y - x * x / 2).epsilon(1e-14));
    }
}

TEST_CASE("tau and alpha against a Simpson line integral") {
  std::mt19937_64 rng(26);
  for (const char* name : {"heisenberg3", "filiform4"}) {
    const Algebra alg = preset_algebra(name);
    const int n = alg.dim();
    PolynomialVector<double> comps(n, Polynomial<double>(n));
    comps[0].add_term(MultiIndex(n, 0), 0.4);
    MultiIndex m2(n, 0);
    m2[0] = 2;
    m2[n - 1] = 1;
    comps[1].add_term(m2, -0.3);
    comps[n - 1] = Polynomial<double>::variable(n, 1) * 0.8;
    const MagneticPotential a(comps);
    const double h = 1e-5;
    // (R_W)'_0 V by central differences of the group product
    auto rdot = [&](const Vec& w, const Vec& v) { return Vec((bch(alg, Vec(h * v), w) - bch(alg, Vec(-h * v), w)) / (2 * h)); };
    for (int t = 0; t < 5; ++t) {
      const Vec x = oracle::normal_vec(rng, n, 0.7), y = oracle::normal_vec(rng, n, 0.7);
      const double tau_ref = oracle::simpson([&](double s) {
        const Vec w = bch(alg, Vec(-s * x), y);
        return Eigen::Matrix<double, 1, 1>(a.pair(w, rdot(w, x)));
      })(0);
      CHECK(tau_exponent(alg, a, x, y) == doctest::Approx(tau_ref).epsilon(1e-7));
      const Vec u = bch(alg, y, Vec(-x)), d = bch(alg, x, Vec(-y));
      const double alpha_ref = oracle::simpson([&](double s) {
        const Vec w = bch(alg, Vec(s * u), x);
        return Eigen::Matrix<double, 1, 1>(a.pair(w, rdot(w, d)));
      })(0);
      CHECK(alpha_exponent(alg, a, x, y) == doctest::Approx(alpha_ref).epsilon(1e-7));
    }
  }
}

TEST_CASE("phase factors: unimodularity, conjugate symmetry, trivial cases") {
  std::mt19937_64 rng(27);
  for (const char* name : {"abelian2", "heisenberg3", "filiform4"}) {
    const Algebra alg = preset_algebra(name);
    const int n = alg.dim();
    PolynomialVector<double> comps(n, Polynomial<double>(n));
    for (int k = 0; k < n; ++k) {
      comps[k] = Polynomial<double>::variable(n, (k + 1) % n) * (0.5 + k);
      MultiIndex q(n, 0);
      q[k] = 2;
      comps[k].add_term(q, 0.2);
    }
    const MagneticPotential a(comps);
    for (int t = 0; t < 100; ++t) {
      const Vec x = oracle::normal_vec(rng, n), y = oracle::normal_vec(rng, n);
      CHECK(std::abs(std::abs(tau(alg, a, x, y)) - 1.0) < 1e-12);
      CHECK(std::abs(std::abs(alpha(alg, a, x, y)) - 1.0) < 1e-12);
      CHECK(std::abs(alpha(alg, a, y, x) - std::conj(alpha(alg, a, x, y))) < 1e-10);
      CHECK(std::abs(alpha(alg, a, x, x) - 1.0) < 1e-12);
      CHECK(tau(alg, MagneticPotential(n), x, y) == cd(1.0));
    }
  }
}

TEST_CASE("potential JSON round trip") {
  const Algebra alg = preset_algebra("heisenberg3");
  const nlohmann::json j = nlohmann::json::parse(R"([{"component": 1, "powers": [0, 1, 0], "coeff": 0.5},
                                                    {"component": 3, "powers": [2, 0, 0], "coeff": -1.0}])");
  const MagneticPotential a = potential_from_json(j, 3);
  const Vec y(Eigen::Vector3d(0.3, 0.7, -0.2));
  CHECK(a(y)(0) == doctest::Approx(0.35));
  CHECK(a(y)(2) == doctest::Approx(-0.09));
  const MagneticPotential b = potential_from_json(potential_to_json(a), 3);
  CHECK((b(y) - a(y)).norm() == 0.0);
  CHECK_THROWS_AS(potential_from_json(nlohmann::json::parse(R"([{"component": 4, "powers": [0,0,0], "coeff": 1}])"), 3),
                  Error);
}
