#include <doctest.h>

#include <cstring>
#include <sstream>

#include "magweyl/io.hpp"
#include "magweyl/presets.hpp"
#include "magweyl/transforms.hpp"
#include "oracles.hpp"

using namespace magweyl;

TEST_CASE("lattice geometry") {
  const GridSpec g({4.0, 2.0}, {8, 6});
  CHECK(g.size() == 48);
  CHECK(g.spacing(0) == 1.0);
  CHECK(g.node(g.origin_index()).norm() == 0.0);
  CHECK(g.dual_node(g.origin_index()).norm() == 0.0);
  CHECK(g.dual_spacing(1) == doctest::Approx(2 * M_PI / 4.0));
  CHECK(g.cell_volume() == doctest::Approx(1.0 * 2.0 / 3.0));
  CHECK(g.dual_cell_volume() == doctest::Approx(1.0 / (8.0 * 4.0)));
  for (std::int64_t k = 0; k < g.size(); ++k) CHECK(g.ravel(g.unravel(k)) == k);
  CHECK(g.stride(0) == 6);
  CHECK(g.is_boundary(0));
  CHECK(!g.is_boundary(g.origin_index()));
  CHECK_THROWS_AS(GridSpec({1.0}, {7}), Error);
  CHECK_THROWS_AS(require_budget(10, 5), Error);
}

TEST_CASE("DFT of a Gaussian matches its Fourier transform") {
  const GridSpec g = GridSpec::uniform(2, 8.0, 64);
  const AnalyticTestFunction f = AnalyticTestFunction::standard_gaussian(2);
  GridFunction s = sample(f, g);
  Eigen::VectorXcd v = s.values;
  dft_forward(g, v);
  double err = 0.0;
  for (std::int64_t k = 0; k < g.size(); ++k) {
    const Vec xi = g.dual_node(k);
    err = std::max(err, std::abs(v(k) - 2 * M_PI * std::exp(-0.5 * xi.squaredNorm())));
  }
  CHECK(err < 1e-12);

  const double lhs = s.values.squaredNorm() * g.cell_volume();
  const double rhs = v.squaredNorm() * g.dual_cell_volume();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  dft_inverse(g, v);
  CHECK((v - s.values).norm() < 1e-13);
}

TEST_CASE("periodic interpolation is exact for band-limited data") {
  const GridSpec g = GridSpec::uniform(1, 3.0, 16);
  const double w0 = 3 * 2 * M_PI / 6.0;
  std::vector<double> w(16);
  for (double x : {-2.9, -0.31, 0.0, 1.77}) {
    periodic_interpolation_weights(g, 0, x, w.data());
    double acc = 0.0;
    for (int j = 0; j < 16; ++j) acc += w[j] * (std::cos(w0 * g.coordinate(0, j)) + std::sin(2 * w0 * g.coordinate(0, j)));
    CHECK(acc == doctest::Approx(std::cos(w0 * x) + std::sin(2 * w0 * x)).epsilon(1e-12));
  }
}

TEST_CASE("gradients against finite differences") {
  Polynomial<cd> p(2);
  p.add_term({1, 0}, cd(1.0, 0.5));
  p.add_term({0, 2}, cd(-0.3, 0.0));
  p.add_term({0, 0}, cd(0.2, 0.0));
  Eigen::Matrix2d m;
  m << 1.2, 0.3, 0.3, 0.8;
  const AnalyticTestFunction f =
      AnalyticTestFunction::gaussian(Vec(Eigen::Vector2d(0.1, -0.4)), m, Vec(Eigen::Vector2d(0.7, -1.1)), p) +
      AnalyticTestFunction::plane_wave(Vec(Eigen::Vector2d(0.2, 0.5)));
  std::mt19937_64 rng(31);
  const double h = 1e-6;
  for (int t = 0; t < 20; ++t) {
    const Vec y = oracle::normal_vec(rng, 2);
    const CVec g = f.gradient(y);
    for (int k = 0; k < 2; ++k) {
      const Vec e = h * Vec::Unit(2, k);
      const cd fd = (f(Vec(y + e)) - f(Vec(y - e))) / (2 * h);
      CHECK(std::abs(g(k) - fd) < 1e-8);
    }
  }
}

TEST_CASE("custom functions without a gradient") {
  const AnalyticTestFunction f = AnalyticTestFunction::custom(1, [](const Vec& y) { return cd(std::exp(-y(0) * y(0))); });
  CHECK(!f.has_gradient());
  CHECK(f(Vec::Zero(1)) == cd(1.0));
  try {
    f.gradient(Vec::Zero(1));
    FAIL("gradient() did not throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::gradient_unavailable);
  }
}

TEST_CASE("Hermite functions are orthogonal on the grid") {
  const GridSpec g = GridSpec::uniform(1, 12.0, 128);
  // probabilists' He_0..He_3 under exp(-y²/4) each, so the product carries exp(-y²/2)
  std::vector<AnalyticTestFunction> h;
  const std::vector<std::vector<double>> coeffs{{1}, {0, 1}, {-1, 0, 1}, {0, -3, 0, 1}};
  for (const auto& c : coeffs) {
    Polynomial<cd> p(1);
    for (size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0.0) p.add_term({int(k)}, c[k]);
    h.push_back(AnalyticTestFunction::gaussian(Vec::Zero(1), Eigen::Matrix<double, 1, 1>(0.5), Vec::Zero(1), p));
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const cd grid_value = inner_product(sample(h[a], g), sample(h[b], g));
      const double exact = a == b ? std::sqrt(2 * M_PI) * std::tgamma(a + 1.0) : 0.0;
      CHECK(std::abs(grid_value - exact) < 1e-12);
      CHECK(std::abs(oracle::l2_pair(h[a], h[b]) - exact) < 1e-12);
    }
}

TEST_CASE("Gaussian norm oracle agrees with the closed form") {
  Eigen::Matrix3d m;
  m << 2.0, 0.2, 0.0, 0.2, 1.0, 0.1, 0.0, 0.1, 0.5;
  const AnalyticTestFunction f =
      AnalyticTestFunction::gaussian(Vec(Eigen::Vector3d(0.3, 0, -1)), m, Vec(Eigen::Vector3d(1, 2, 3)), Polynomial<cd>::constant(3, 1.0));
  CHECK(oracle::l2_norm(f) == doctest::Approx(std::pow(M_PI, 0.75) / std::pow(m.determinant(), 0.25)).epsilon(1e-13));
}

TEST_CASE("mixed and Lebesgue norms of a separable phase-space function") {
  const GridSpec gx = GridSpec::uniform(1, 6.0, 32), gy = GridSpec::uniform(1, 5.0, 40);
  PhaseSpaceFunction f{gx, gy, PhaseSpaceFunction::Matrix(32, 40)};
  Eigen::VectorXd a(32), b(40);
  for (int i = 0; i < 32; ++i) a(i) = std::exp(-std::abs(gx.coordinate(0, i)));
  for (int k = 0; k < 40; ++k) b(k) = 1.0 / (1.0 + gy.dual_coordinate(0, k) * gy.dual_coordinate(0, k));
  for (int i = 0; i < 32; ++i)
    for (int k = 0; k < 40; ++k) f.values(i, k) = a(i) * b(k);
  auto lp = [](const Eigen::VectorXd& v, double p, double dv) {
    return std::isinf(p) ? v.cwiseAbs().maxCoeff() : std::pow(v.cwiseAbs().array().pow(p).sum() * dv, 1.0 / p);
  };
  for (double p : {1.0, 2.0, 3.5, kInfinity})
    for (double q : {1.0, 1.5, 4.0, kInfinity}) {
      const double expect = lp(a, p, gx.cell_volume()) * lp(b, q, gy.dual_cell_volume());
      CHECK(mixed_norm(f, p, q) == doctest::Approx(expect).epsilon(1e-12));
    }
  CHECK(lp_norm(f, 2.0) == doctest::Approx(mixed_norm(f, 2.0, 2.0)).epsilon(1e-13));
  CHECK(std::sqrt(inner_product(f, f).real()) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-13));
}

TEST_CASE("MWPS round trip and layout") {
  Eigen::MatrixXcd m(3, 2);
  m << cd(1, 2), cd(3, 4), cd(-1, 0.5), cd(0, 0), cd(1e-300, -7), cd(2, 2);
  std::stringstream ss;
  write_mwps(ss, m, 2);
  const std::string bytes = ss.str();
  REQUIRE(bytes.size() == 16 + 6 * 16);
  CHECK(bytes.substr(0, 4) == "MWPS");
  std::uint32_t hdr[3];
  std::memcpy(hdr, bytes.data() + 4, 12);
  CHECK(hdr[0] == 2);
  CHECK(hdr[1] == 3);
  CHECK(hdr[2] == 2);
  double first[2];
  std::memcpy(first, bytes.data() + 16 + 16, 16);  // row-major: element (0, 1)
  CHECK(first[0] == 3.0);
  CHECK(first[1] == 4.0);
  const MwpsArray back = read_mwps(ss);
  CHECK(back.rank == 2);
  CHECK(back.values == m);

  std::stringstream bad("MWPX0000");
  CHECK_THROWS_AS(read_mwps(bad), Error);
  std::stringstream truncated(bytes.substr(0, 40));
  CHECK_THROWS_AS(read_mwps(truncated), Error);
}

TEST_CASE("CSV exports") {
  const GridSpec g = GridSpec::uniform(2, 2.0, 4);
  const GridFunction f = sample(AnalyticTestFunction::standard_gaussian(2), g);
  std::stringstream ss;
  write_csv(ss, f);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "i1,i2,y1,y2,re,im");
  int rows = 0;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 16);

  const MagneticSetting s(preset_algebra("abelian1"));
  const GridSpec g1 = GridSpec::uniform(1, 4.0, 8);
  const AnalyticTestFunction phi = AnalyticTestFunction::standard_gaussian(1);
  std::stringstream ps;
  write_csv(ps, ambiguity_full(s, phi, phi, g1, g1));
  std::getline(ps, line);
  CHECK(line == "ix1,x1,ik1,xi1,re,im");
  rows = 0;
  while (std::getline(ps, line)) ++rows;
  CHECK(rows == 64);
}
