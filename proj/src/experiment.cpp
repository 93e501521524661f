#include "magweyl/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "magweyl/io.hpp"
#include "magweyl/maps.hpp"

namespace magweyl {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::config_invalid, what); }

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"moyal", 1e-6},         {"isometry", 1e-6},        {"marginals", 1e-6},   {"gamma", 1e-4},
      {"reconstruct", 1e-4},   {"rank-one", 1e-4},        {"kernel-symmetry", 1e-10},
      {"commutator", 1e-8},    {"certificate", 1e-10},    {"heisenberg", 1e-6},  {"lieb", 1e-8},
      {"lieb-saturation", 1e-8}, {"entropy", 1e-3},       {"concentration", 0.0},
  };
  return t;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// stable across platforms, unlike std::hash
std::uint64_t stream_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) h = (h ^ c) * 0x100000001b3ULL;
  return splitmix(seed ^ h);
}

Vec vec_from(const json& j, int dim, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) invalid(what + " must be an array of length " + std::to_string(dim));
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = j[i].get<double>();
  return v;
}

json vec_to(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::MatrixXd matrix_from(const json& j, int dim, const std::string& what) {
  if (j.is_number()) return Eigen::MatrixXd::Identity(dim, dim) * j.get<double>();
  if (!j.is_array() || static_cast<int>(j.size()) != dim) invalid(what + " must be a scalar or a " + std::to_string(dim) + "x" + std::to_string(dim) + " array");
  Eigen::MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r) m.row(r) = vec_from(j[r], dim, what).transpose();
  return m;
}

json matrix_to(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vec_to(m.row(r).transpose()));
  return out;
}

GridRequest grid_from(const json& j, const GridRequest& base) {
  GridRequest g = base;
  auto read = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    using T = typename std::decay_t<decltype(dst)>::value_type;
    const json& v = j.at(key);
    dst = v.is_array() ? v.get<std::vector<T>>() : std::vector<T>{v.get<T>()};
  };
  read("points", g.points);
  read("half_width", g.half_widths);
  return g;
}

json grid_to(const GridRequest& g) { return {{"points", g.points}, {"half_width", g.half_widths}}; }

std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fmt(const Vec& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v(i));
  return s + "]";
}

json number_to(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  invalid("unrecognized number '" + s + "'");
}

GridSpec heisenberg_spec(const ExperimentConfig& c, const GridSpec& fallback, int dim) {
  return c.heisenberg_grid ? c.heisenberg_grid->spec(dim) : fallback;
}

// Everything a check needs, built once.
class Runner {
 public:
  explicit Runner(const ExperimentConfig& c)
      : c_(c),
        s_(setting_from_config(c)),
        n_(s_.dim()),
        gx_(c.position.spec(n_)),
        gy_(c.fourier.spec(n_)),
        f1_(fn("f1")),
        f2_(fn("f2")),
        phi1_(fn("phi1")),
        phi2_(fn("phi2")) {
    require_budget(gx_.size() * gy_.size());
  }

  ExperimentReport run() {
    ExperimentReport r;
    for (const std::string& name : c_.checks) {
      if (name == "moyal") moyal(r);
      else if (name == "isometry") isometry(r);
      else if (name == "marginals") marginals(r);
      else if (name == "reconstruct") reconstruct_check(r);
      else if (name == "rank-one") rank_one(r);
      else if (name == "kernel-symmetry") kernel_symmetry(r);
      else if (name == "commutator") commutator(r);
      else if (name == "heisenberg") heisenberg(r);
      else if (name == "lieb") lieb(r);
      else if (name == "entropy") entropy_check(r);
      else if (name == "concentration") concentration(r);
      else invalid("unknown check '" + name + "'");
    }
    if (c_.write_arrays) {
      std::filesystem::create_directories(c_.out_dir);
      write_mwps(c_.out_dir / "ambiguity_f1_phi1.mwps", a1());
    }
    return r;
  }

 private:
  AnalyticTestFunction fn(const std::string& key) const {
    const auto it = c_.functions.find(key);
    return it == c_.functions.end() ? AnalyticTestFunction::standard_gaussian(n_) : function_from_json(it->second, n_);
  }

  double norm(const AnalyticTestFunction& f) const { return l2_norm(sample(f, gy_)); }
  double norm_product() const { return norm(f1_) * norm(f2_) * norm(phi1_) * norm(phi2_); }

  const PhaseSpaceFunction& a1() {
    if (!a1_) a1_ = ambiguity_full(s_, f1_, phi1_, gx_, gy_);
    return *a1_;
  }
  const PhaseSpaceFunction& a2() {
    if (!a2_) a2_ = ambiguity_full(s_, f2_, phi2_, gx_, gy_);
    return *a2_;
  }

  // identity rows: lhs is the measured defect, rhs the tolerance
  void defect_row(ExperimentReport& r, const std::string& check, const std::string& param, double defect,
                  double tol) {
    r.rows.push_back({check, c_.preset, param, defect, tol, tol - defect, defect <= tol});
  }
  // inequality rows lhs <= rhs, with slack `tol` relative to rhs
  void upper_row(ExperimentReport& r, const std::string& check, const std::string& param, InequalitySides s,
                 double tol) {
    const double margin = s.rhs - s.lhs;
    r.rows.push_back({check, c_.preset, param, s.lhs, s.rhs, margin, margin >= -tol * std::abs(s.rhs)});
  }
  // inequality rows lhs >= rhs, with absolute slack `tol`
  void lower_row(ExperimentReport& r, const std::string& check, const std::string& param, InequalitySides s,
                 double tol) {
    const double margin = s.lhs - s.rhs;
    r.rows.push_back({check, c_.preset, param, s.lhs, s.rhs, margin, margin >= -tol});
  }

  void moyal(ExperimentReport& r) {
    const GridFunction f1 = sample(f1_, gy_), f2 = sample(f2_, gy_), p1 = sample(phi1_, gy_), p2 = sample(phi2_, gy_);
    const cd lhs = inner_product(a1(), a2());
    const cd rhs = inner_product(f1, f2) * std::conj(inner_product(p1, p2));
    defect_row(r, "moyal", "(A1|A2) vs (f1|f2)conj(phi1|phi2)", std::abs(lhs - rhs) / norm_product(),
               c_.tolerance("moyal"));
  }

  void isometry(ExperimentReport& r) {
    const double tol = c_.tolerance("isometry");
    const double e1 = norm(f1_) * norm(phi1_), e2 = norm(f2_) * norm(phi2_);
    defect_row(r, "isometry", "f1,phi1", std::abs(lp_norm(a1(), 2.0) - e1) / e1, tol);
    defect_row(r, "isometry", "f2,phi2", std::abs(lp_norm(a2(), 2.0) - e2) / e2, tol);
  }

  void marginals(ExperimentReport& r) {
    const PhaseSpaceFunction w = wigner(s_, f1_, phi1_, gy_, gx_);
    const Eigen::VectorXcd marginal = w.values.rowwise().sum() * w.fourier.dual_cell_volume();
    const Eigen::VectorXcd prod = sample(f1_, gy_).values.cwiseProduct(sample(phi1_, gy_).values.conjugate());
    const double floor = 1e-8 * prod.cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (Eigen::Index k = 0; k < prod.size(); ++k)
      if (std::abs(prod(k)) >= floor) worst = std::max(worst, std::abs(marginal(k) - prod(k)) / std::abs(prod(k)));
    defect_row(r, "marginals", "Y-marginal vs f1 conj(phi1)", worst, c_.tolerance("marginals"));

    // a₀(<η, X0>) is integrable only on a line; in higher dimension pair Γ against a full dual Gaussian
    const Vec x0 = c_.gamma_x0.size() == n_ ? c_.gamma_x0 : Vec(Vec::Unit(n_, 0));
    const Eigen::MatrixXd cov = n_ == 1 ? Eigen::MatrixXd(x0 * x0.transpose() / (c_.gamma_width * c_.gamma_width))
                                        : kernel_covariance();
    const Symbol a = n_ == 1 ? Symbol::separable_gaussian(x0, c_.gamma_width) : Symbol::dual_gaussian(cov);
    const DualGridFunction gamma = gamma_marginal(w);
    cd side = 0.0;
    for (std::int64_t k = 0; k < gamma.grid.size(); ++k) {
      const Vec eta = gamma.grid.dual_node(k);
      side += gamma.values(k) * std::exp(-0.5 * eta.dot(cov * eta));
    }
    side *= gamma.grid.dual_cell_volume();
    const GridFunction op = op_apply(s_, a, sample(f1_, gy_));
    const cd opside = inner_product(op, sample(phi1_, gy_));
    const std::string label = n_ == 1 ? "gamma pairing a0(<eta,x0>) x0=" + fmt(x0) + " width=" + fmt(c_.gamma_width)
                                      : std::string("gamma pairing dual gaussian");
    defect_row(r, "marginals", label,
               std::abs(side - opside) / std::max(std::abs(opside), norm(f1_) * norm(phi1_) * 1e-12),
               c_.tolerance("gamma"));
  }

  Eigen::MatrixXd kernel_covariance() const {
    return c_.kernel_covariance.rows() == n_ ? c_.kernel_covariance : Eigen::MatrixXd(Eigen::MatrixXd::Identity(n_, n_));
  }

  void reconstruct_check(ExperimentReport& r) {
    const GridFunction rec = reconstruct(s_, a1(), phi2_, gy_);
    const GridFunction f = sample(f1_, gy_);
    const cd scale = inner_product(sample(phi2_, gy_), sample(phi1_, gy_));
    const Eigen::VectorXcd expect = f.values * scale;
    defect_row(r, "reconstruct", "f1 from A_phi1 f1, window phi2", (rec.values - expect).norm() / expect.norm(),
               c_.tolerance("reconstruct"));
  }

  void rank_one(ExperimentReport& r) {
    require_budget(gy_.size() * gy_.size() * gy_.size() * gx_.size(), std::int64_t(1) << 34);
    const Symbol a = Symbol::sampled(wigner(s_, phi1_, phi2_, gy_, gx_));
    const GridFunction u = sample(f1_, gy_);
    const GridFunction out = op_apply(s_, a, u);
    const Eigen::VectorXcd expect = sample(phi1_, gy_).values * inner_product(u, sample(phi2_, gy_));
    defect_row(r, "rank-one", "Op(W(phi1,phi2)) f1 vs (f1|phi2) phi1", (out.values - expect).norm() / expect.norm(),
               c_.tolerance("rank-one"));
  }

  void kernel_symmetry(ExperimentReport& r) {
    std::mt19937_64 rng(stream_seed(c_.seed, "kernel-symmetry"));
    std::uniform_int_distribution<std::int64_t> node(0, gy_.size() - 1);
    std::vector<std::pair<Vec, Vec>> probes;
    for (int k = 0; k < c_.kernel_probes; ++k) probes.emplace_back(gy_.node(node(rng)), gy_.node(node(rng)));
    auto worst = [&](const Symbol& a) {
      double w = 0.0, peak = 0.0;
      for (const auto& [x, y] : probes) {
        const cd kxy = kernel(s_, a, x, y);
        w = std::max(w, std::abs(kxy - std::conj(kernel(s_, a, y, x))));
        peak = std::max(peak, std::abs(kxy));
      }
      return w / std::max(peak, 1e-300);
    };
    defect_row(r, "kernel-symmetry", "dual gaussian", worst(Symbol::dual_gaussian(kernel_covariance())),
               c_.tolerance("kernel-symmetry"));
    PhaseSpaceFunction w = wigner(s_, f1_, f1_, gy_, gx_);
    w.values = w.values.real().cast<cd>();
    defect_row(r, "kernel-symmetry", "Re W(f1,f1)", worst(Symbol::sampled(std::move(w))),
               c_.tolerance("kernel-symmetry"));
  }

  std::vector<PairSpec> pairs() const {
    std::vector<PairSpec> out = c_.pairs;
    if (c_.jordan_holder_pairs)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) {
          const HyperplaneCertificate cert =
              check_hyperplane(s_.algebra, Vec::Unit(n_, k), Vec::Unit(n_, j), c_.certificate_probes, c_.seed);
          const bool listed = std::any_of(c_.pairs.begin(), c_.pairs.end(), [&](const PairSpec& p) {
            return p.x0 == Vec::Unit(n_, j) && p.xi0 == Vec::Unit(n_, k);
          });
          if (!listed && cert.residual <= c_.tolerance("certificate"))
            out.push_back({Vec::Unit(n_, j), Vec::Unit(n_, k), true});
        }
    return out;
  }

  static std::string pair_label(const PairSpec& p) { return "x0=" + fmt(p.x0) + " xi0=" + fmt(p.xi0); }

  // Certified pair, or nullopt after recording an expected rejection.
  std::optional<HyperplaneCertificate> certify(ExperimentReport& r, const std::string& check, const PairSpec& p) {
    if (p.x0.size() != n_ || p.xi0.size() != n_) invalid("pair vectors must have length " + std::to_string(n_));
    HyperplaneCertificate cert = check_hyperplane(s_.algebra, p.xi0, p.x0, c_.certificate_probes, c_.seed);
    const double tol = c_.tolerance("certificate");
    cert.valid = cert.residual <= tol;
    if (cert.valid == p.expect_valid && !cert.valid) {
      r.rows.push_back({check, c_.preset, pair_label(p) + " rejected", cert.residual, tol, cert.residual - tol, true});
      return std::nullopt;
    }
    if (!cert.valid)
      throw Error(Errc::certificate_failed, check + ": " + pair_label(p) + " violates the orbit hyperplane condition "
                                                                           "(residual " + fmt(cert.residual) + ")");
    if (!p.expect_valid) {
      r.rows.push_back({check, c_.preset, pair_label(p) + " expected rejection", cert.residual, tol,
                        cert.residual - tol, false});
      return std::nullopt;
    }
    return cert;
  }

  void commutator(ExperimentReport& r) {
    std::mt19937_64 rng(stream_seed(c_.seed, "commutator"));
    std::normal_distribution<double> normal;
    std::vector<Vec> probes;
    for (int k = 0; k < c_.commutator_probes; ++k) {
      Vec y(n_);
      for (int i = 0; i < n_; ++i) y(i) = normal(rng);
      probes.push_back(y);
    }
    const double sup = sample(f1_, gy_).values.cwiseAbs().maxCoeff();
    for (const PairSpec& p : pairs())
      if (const auto cert = certify(r, "commutator", p))
        defect_row(r, "commutator", pair_label(p) + " c0=" + fmt(cert->c0),
                   commutator_defect(s_, *cert, f1_, probes) / sup, c_.tolerance("commutator"));
  }

  void heisenberg(ExperimentReport& r) {
    const GridSpec g = heisenberg_spec(c_, gy_, n_);
    for (const PairSpec& p : pairs())
      if (const auto cert = certify(r, "heisenberg", p))
        lower_row(r, "heisenberg", pair_label(p), heisenberg_product(s_, *cert, f1_, g), c_.tolerance("heisenberg"));
  }

  void lieb(ExperimentReport& r) {
    const double norms = norm_product();
    const double tol = c_.tolerance("lieb");
    for (double p : c_.lieb_p) upper_row(r, "lieb", "p=" + fmt(p), lieb_check(a1(), a2(), p, norms), tol);
    // p = 1 with matched pairs is forced to equality by Moyal
    const double self = norm(f1_) * norm(phi1_);
    const InequalitySides sat = lieb_check(a1(), a1(), 1.0, self * self);
    defect_row(r, "lieb", "p=1 saturation f1,phi1", std::abs(sat.lhs - sat.rhs) / sat.rhs,
               c_.tolerance("lieb-saturation"));
    if (c_.lieb_mixed) {
      const LiebParameters& m = *c_.lieb_mixed;
      upper_row(r, "lieb",
                "mixed p1=" + fmt(m.p1) + " p2=" + fmt(m.p2) + " r1=" + fmt(m.r1) + " r2=" + fmt(m.r2) +
                    " s1=" + fmt(m.s1) + " s2=" + fmt(m.s2),
                lieb_mixed_check(s_, m, f1_, f2_, phi1_, phi2_, gx_, gy_), tol);
    }
  }

  void entropy_check(ExperimentReport& r) {
    const double tol = c_.tolerance("entropy");
    lower_row(r, "entropy", "f1,phi1", {entropy(a1(), norm(f1_) * norm(phi1_)), double(n_)}, tol);
    lower_row(r, "entropy", "f2,phi2", {entropy(a2(), norm(f2_) * norm(phi2_)), double(n_)}, tol);
  }

  void concentration(ExperimentReport& r) {
    PhaseSpaceFunction theta = a1();
    theta.values = theta.values.cwiseProduct(a2().values.conjugate());
    const double mass = norm_product();
    for (double eps : c_.concentration_eps) {
      const double bound = concentration_bound(eps, 2.0, 2.0, n_, c_.concentration_samples, c_.concentration_p_max);
      lower_row(r, "concentration", "eps=" + fmt(eps), {greedy_support_measure(theta, eps, mass), bound},
                c_.tolerance("concentration"));
    }
  }

  const ExperimentConfig& c_;
  MagneticSetting s_;
  int n_;
  GridSpec gx_, gy_;
  AnalyticTestFunction f1_, f2_, phi1_, phi2_;
  std::optional<PhaseSpaceFunction> a1_, a2_;
};

}  // namespace

GridSpec GridRequest::spec(int dim) const {
  auto widen = [&](const auto& v, const char* what) {
    using T = typename std::decay_t<decltype(v)>::value_type;
    if (v.size() == 1) return std::vector<T>(dim, v[0]);
    if (static_cast<int>(v.size()) != dim) invalid(std::string("grid ") + what + " must have 1 or " + std::to_string(dim) + " entries");
    return v;
  };
  try {
    return GridSpec(widen(half_widths, "half_width"), widen(points, "points"));
  } catch (const Error& e) {
    if (e.code() == Errc::budget_exceeded) throw;
    invalid(std::string("grid: ") + e.what());
  }
}

const std::vector<std::string>& ExperimentConfig::check_names() {
  static const std::vector<std::string> names{"moyal",     "isometry",        "marginals",  "reconstruct",
                                              "rank-one",  "kernel-symmetry", "commutator", "heisenberg",
                                              "lieb",      "entropy",         "concentration"};
  return names;
}

ExperimentConfig ExperimentConfig::defaults(const std::string& preset) {
  ExperimentConfig c;
  c.preset = preset;
  c.tolerances = default_tolerances();
  if (preset == "abelian1") {
    c.checks = check_names();
  } else if (preset == "abelian2") {
    c.checks = {"moyal", "isometry", "marginals", "kernel-symmetry", "commutator", "heisenberg", "lieb", "entropy",
                "concentration"};
  } else if (preset == "abelian3") {
    c.position = c.fourier = {{16}, {5.0}};
    c.checks = {"moyal", "isometry", "commutator", "heisenberg", "lieb", "entropy"};
    c.tolerances["moyal"] = c.tolerances["isometry"] = 1e-4;
  } else if (preset == "heisenberg3") {
    c.position = {{12}, {5.0}};
    c.fourier = {{12}, {3.5}};
    c.heisenberg_grid = GridRequest{{24}, {6.0}};
    c.checks = {"moyal", "isometry", "marginals", "reconstruct", "kernel-symmetry", "commutator", "heisenberg",
                "lieb", "entropy"};
    c.pairs = {{Vec::Unit(3, 2), Vec::Unit(3, 2), true},
               {Vec::Unit(3, 0), (Vec(3) << 0.2, 0.1, 0.7).finished(), false}};
    c.tolerances["moyal"] = c.tolerances["isometry"] = 1e-3;
    c.tolerances["reconstruct"] = 1e-2;
    c.tolerances["commutator"] = 1e-6;
    c.tolerances["entropy"] = 0.05;
    c.tolerances["lieb"] = 1e-3;
    c.tolerances["lieb-saturation"] = 1e-3;
    c.tolerances["marginals"] = 1e-6;
    c.tolerances["gamma"] = 1e-2;
  } else if (preset == "filiform4") {
    c.position = c.fourier = {{8}, {4.0}};
    c.checks = {"commutator", "heisenberg"};
    c.heisenberg_grid = GridRequest{{16}, {5.0}};
    c.tolerances["commutator"] = 1e-6;
  } else if (preset != "custom") {
    invalid("unknown preset '" + preset + "'");
  }
  return c;
}

double ExperimentConfig::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it != tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  try {
    if (!j.is_object()) invalid("config must be a JSON object");
    static const std::vector<std::string> known{"preset", "algebra", "potential", "seed", "grid", "functions",
                                                "checks", "tolerances", "heisenberg", "commutator", "certificate",
                                                "marginals", "kernel_symmetry", "lieb", "concentration", "output"};
    for (const auto& [key, _] : j.items())
      if (std::find(known.begin(), known.end(), key) == known.end()) invalid("unknown config key '" + key + "'");

    std::string preset = j.value("preset", std::string(j.contains("algebra") ? "custom" : "abelian1"));
    ExperimentConfig c = defaults(preset);
    if (preset == "custom") {
      if (!j.contains("algebra")) invalid("preset \"custom\" needs an \"algebra\" table");
      c.algebra = j.at("algebra");
    } else if (j.contains("algebra")) {
      invalid("give either a preset name or an algebra table, not both");
    }
    const int n = preset == "custom" ? structure_from_json(c.algebra).dim() : preset_structure(preset).dim();

    if (j.contains("potential")) c.potential = j.at("potential");
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      GridRequest both = grid_from(g, c.position);
      if (g.contains("points") || g.contains("half_width")) c.position = c.fourier = both;
      if (g.contains("position")) c.position = grid_from(g.at("position"), c.position);
      if (g.contains("fourier")) c.fourier = grid_from(g.at("fourier"), c.fourier);
    }
    if (j.contains("functions"))
      for (const auto& [key, spec] : j.at("functions").items()) {
        if (key != "f1" && key != "f2" && key != "phi1" && key != "phi2")
          invalid("functions must be named f1, f2, phi1, phi2 (got '" + key + "')");
        function_from_json(spec, n);
        c.functions[key] = spec;
      }
    if (j.contains("checks")) {
      c.checks = j.at("checks").get<std::vector<std::string>>();
      for (const auto& name : c.checks)
        if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
          invalid("unknown check '" + name + "'");
    }
    if (j.contains("tolerances"))
      for (const auto& [key, v] : j.at("tolerances").items()) {
        if (!default_tolerances().count(key)) invalid("unknown tolerance '" + key + "'");
        c.tolerances[key] = v.get<double>();
      }
    auto read_pairs = [&](const json& t) {
      if (t.contains("pairs")) {
        c.pairs.clear();
        for (const auto& p : t.at("pairs"))
          c.pairs.push_back({vec_from(p.at("x0"), n, "x0"), vec_from(p.at("xi0"), n, "xi0"), p.value("expect_valid", true)});
      }
      if (t.contains("jordan_holder")) c.jordan_holder_pairs = t.at("jordan_holder").get<bool>();
    };
    if (j.contains("commutator")) {
      const json& t = j.at("commutator");
      read_pairs(t);
      c.commutator_probes = t.value("probes", c.commutator_probes);
    }
    if (j.contains("heisenberg")) {
      const json& t = j.at("heisenberg");
      read_pairs(t);
      if (t.contains("grid")) c.heisenberg_grid = grid_from(t.at("grid"), c.heisenberg_grid.value_or(c.fourier));
    }
    if (j.contains("certificate")) c.certificate_probes = j.at("certificate").value("probes", c.certificate_probes);
    if (j.contains("marginals")) {
      const json& t = j.at("marginals");
      if (t.contains("x0")) c.gamma_x0 = vec_from(t.at("x0"), n, "marginals.x0");
      c.gamma_width = t.value("width", c.gamma_width);
      if (!(c.gamma_width > 0.0)) invalid("marginals.width must be positive");
    }
    if (j.contains("kernel_symmetry")) {
      const json& t = j.at("kernel_symmetry");
      if (t.contains("covariance")) c.kernel_covariance = matrix_from(t.at("covariance"), n, "kernel_symmetry.covariance");
      c.kernel_probes = t.value("probes", c.kernel_probes);
    }
    if (j.contains("lieb")) {
      const json& t = j.at("lieb");
      if (t.contains("p")) c.lieb_p = t.at("p").get<std::vector<double>>();
      for (double p : c.lieb_p)
        if (!(p >= 1.0)) invalid("lieb.p entries must be >= 1");
      if (t.contains("mixed")) {
        const json& m = t.at("mixed");
        LiebParameters lp;
        lp.p1 = m.value("p1", lp.p1);
        lp.p2 = m.value("p2", lp.p2);
        lp.r1 = m.value("r1", lp.r1);
        lp.r2 = m.value("r2", lp.r2);
        lp.s1 = m.value("s1", lp.s1);
        lp.s2 = m.value("s2", lp.s2);
        try {
          lp.validate();
        } catch (const Error& e) {
          invalid(std::string("lieb.mixed: ") + e.what());
        }
        c.lieb_mixed = lp;
      }
    }
    if (j.contains("concentration")) {
      const json& t = j.at("concentration");
      if (t.contains("eps")) {
        const json& e = t.at("eps");
        c.concentration_eps = e.is_array() ? e.get<std::vector<double>>() : std::vector<double>{e.get<double>()};
      }
      for (double e : c.concentration_eps)
        if (!(e > 0.0 && e < 1.0)) invalid("concentration.eps must lie in (0, 1)");
      c.concentration_samples = t.value("samples", c.concentration_samples);
      c.concentration_p_max = t.value("p_max", c.concentration_p_max);
    }
    if (j.contains("output")) {
      const json& t = j.at("output");
      if (t.contains("dir")) c.out_dir = t.at("dir").get<std::string>();
      if (t.contains("formats")) c.formats = t.at("formats").get<std::vector<std::string>>();
      for (const auto& f : c.formats)
        if (f != "csv" && f != "json" && f != "bin") invalid("output format must be csv, json or bin (got '" + f + "')");
      c.write_arrays = t.value("arrays", c.write_arrays) ||
                       std::find(c.formats.begin(), c.formats.end(), "bin") != c.formats.end();
    }
    // resolve now so errors surface at load time
    setting_from_config(c);
    c.position.spec(n);
    c.fourier.spec(n);
    if (c.heisenberg_grid) c.heisenberg_grid->spec(n);
    return c;
  } catch (const json::exception& e) {
    invalid(std::string("malformed config: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::io_failure, "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::exception& e) {
    invalid(path.string() + ": " + e.what());
  }
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json j;
  j["preset"] = preset;
  if (preset == "custom") j["algebra"] = algebra;
  j["potential"] = potential;
  j["seed"] = seed;
  j["grid"] = {{"position", grid_to(position)}, {"fourier", grid_to(fourier)}};
  json fns = json::object();
  for (const char* key : {"f1", "f2", "phi1", "phi2"}) {
    const auto it = functions.find(key);
    fns[key] = it == functions.end() ? json{{"type", "standard_gaussian"}} : it->second;
  }
  j["functions"] = fns;
  j["checks"] = checks;
  json tol = json::object();
  for (const auto& [k, v] : default_tolerances()) tol[k] = tolerance(k);
  j["tolerances"] = tol;
  json ps = json::array();
  for (const auto& p : pairs) ps.push_back({{"x0", vec_to(p.x0)}, {"xi0", vec_to(p.xi0)}, {"expect_valid", p.expect_valid}});
  j["commutator"] = {{"pairs", ps}, {"jordan_holder", jordan_holder_pairs}, {"probes", commutator_probes}};
  j["heisenberg"] = json::object();
  if (heisenberg_grid) j["heisenberg"]["grid"] = grid_to(*heisenberg_grid);
  j["certificate"] = {{"probes", certificate_probes}};
  j["marginals"] = {{"width", gamma_width}};
  if (gamma_x0.size() > 0) j["marginals"]["x0"] = vec_to(gamma_x0);
  j["kernel_symmetry"] = {{"probes", kernel_probes}};
  if (kernel_covariance.size() > 0) j["kernel_symmetry"]["covariance"] = matrix_to(kernel_covariance);
  j["lieb"] = {{"p", lieb_p}};
  if (lieb_mixed)
    j["lieb"]["mixed"] = {{"p1", lieb_mixed->p1}, {"p2", lieb_mixed->p2}, {"r1", lieb_mixed->r1},
                          {"r2", lieb_mixed->r2}, {"s1", lieb_mixed->s1}, {"s2", lieb_mixed->s2}};
  j["concentration"] = {{"eps", concentration_eps}, {"samples", concentration_samples}, {"p_max", concentration_p_max}};
  j["output"] = {{"dir", out_dir.string()}, {"formats", formats}, {"arrays", write_arrays}};
  return j;
}

MagneticSetting setting_from_config(const ExperimentConfig& c) {
  const StructureConstants sc = c.preset == "custom" ? structure_from_json(c.algebra) : preset_structure(c.preset);
  Algebra alg = [&] {
    try {
      return validate(sc);
    } catch (const Error& e) {
      invalid(std::string("algebra: ") + e.what());
    }
  }();
  const int n = alg.dim();
  const json& p = c.potential;
  if (p.is_null() || (p.is_array() && p.empty())) return MagneticSetting(std::move(alg));
  if (p.is_object() && p.contains("linear"))
    return MagneticSetting(std::move(alg), MagneticPotential::linear(matrix_from(p.at("linear"), n, "potential.linear")));
  if (p.is_array()) return MagneticSetting(std::move(alg), potential_from_json(p, n));
  invalid("potential must be a monomial list or {\"linear\": matrix}");
}

AnalyticTestFunction function_from_json(const json& j, int dim) {
  try {
    const std::string type = j.value("type", std::string("gaussian"));
    AnalyticTestFunction f;
    if (type == "standard_gaussian") {
      f = AnalyticTestFunction::standard_gaussian(dim);
    } else if (type == "gaussian") {
      const Vec center = j.contains("center") ? vec_from(j.at("center"), dim, "center") : Vec(Vec::Zero(dim));
      Eigen::MatrixXd precision = Eigen::MatrixXd::Identity(dim, dim);
      if (j.contains("precision") && j.contains("covariance")) invalid("give precision or covariance, not both");
      if (j.contains("precision")) precision = matrix_from(j.at("precision"), dim, "precision");
      if (j.contains("covariance")) precision = matrix_from(j.at("covariance"), dim, "covariance").inverse();
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(precision);
      if (!precision.isApprox(precision.transpose()) || eig.eigenvalues().minCoeff() <= 0.0)
        invalid("gaussian precision must be symmetric positive definite");
      const Vec modulation =
          j.contains("modulation") ? vec_from(j.at("modulation"), dim, "modulation") : Vec(Vec::Zero(dim));
      Polynomial<cd> prefactor = Polynomial<cd>::constant(dim, 1.0);
      if (j.contains("polynomial")) {
        prefactor = Polynomial<cd>(dim);
        for (const auto& m : j.at("polynomial")) {
          const auto powers = m.at("powers").get<std::vector<int>>();
          if (static_cast<int>(powers.size()) != dim) invalid("polynomial monomial has wrong arity");
          const json& c = m.at("coeff");
          prefactor.add_term(powers, c.is_array() ? cd(c.at(0).get<double>(), c.at(1).get<double>()) : cd(c.get<double>()));
        }
      }
      f = AnalyticTestFunction::gaussian(center, precision, modulation, std::move(prefactor));
    } else if (type == "sum") {
      bool first = true;
      for (const auto& t : j.at("terms")) {
        AnalyticTestFunction g = function_from_json(t, dim);
        f = first ? g : f + g;
        first = false;
      }
      if (first) invalid("sum needs at least one term");
    } else {
      invalid("unknown function type '" + type + "'");
    }
    if (j.contains("scale")) {
      const json& s = j.at("scale");
      f *= s.is_array() ? cd(s.at(0).get<double>(), s.at(1).get<double>()) : cd(s.get<double>());
    }
    return f;
  } catch (const json::exception& e) {
    invalid(std::string("malformed function: ") + e.what());
  }
}

bool ExperimentReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

void to_json(json& j, const ExperimentReport& r) {
  j = json::object();
  json rows = json::array();
  for (const CheckRow& c : r.rows)
    rows.push_back({{"check", c.check}, {"preset", c.preset}, {"param", c.param}, {"lhs", number_to(c.lhs)},
                    {"rhs", number_to(c.rhs)}, {"margin", number_to(c.margin)}, {"pass", c.pass}});
  j["rows"] = rows;
  j["all_pass"] = r.all_pass();
}

void from_json(const json& j, ExperimentReport& r) {
  r.rows.clear();
  for (const auto& c : j.at("rows"))
    r.rows.push_back({c.at("check").get<std::string>(), c.at("preset").get<std::string>(),
                      c.at("param").get<std::string>(), number_from(c.at("lhs")), number_from(c.at("rhs")),
                      number_from(c.at("margin")), c.at("pass").get<bool>()});
}

void write_csv(std::ostream& out, const ExperimentReport& r) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  out << "check,preset,param,lhs,rhs,margin,pass\n";
  for (const CheckRow& c : r.rows)
    out << quote(c.check) << ',' << quote(c.preset) << ',' << quote(c.param) << ',' << fmt(c.lhs) << ','
        << fmt(c.rhs) << ',' << fmt(c.margin) << ',' << (c.pass ? "true" : "false") << '\n';
}

ExperimentReport run(const ExperimentConfig& config) { return Runner(config).run(); }

void emit(const ExperimentConfig& config, const ExperimentReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  require(!ec, Errc::io_failure, "cannot create " + config.out_dir.string());
  auto open = [&](const char* name) {
    std::ofstream out(config.out_dir / name);
    require(static_cast<bool>(out), Errc::io_failure, "cannot write " + (config.out_dir / name).string());
    return out;
  };
  const auto& f = config.formats;
  if (std::find(f.begin(), f.end(), "csv") != f.end()) {
    auto out = open("report.csv");
    write_csv(out, report);
  }
  if (std::find(f.begin(), f.end(), "json") != f.end()) {
    auto out = open("report.json");
    out << json(report).dump(2) << '\n';
  }
  auto out = open("config.json");
  out << config.to_json().dump(2) << '\n';
}

}  // namespace magweyl
