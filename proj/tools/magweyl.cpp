#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "magweyl/experiment.hpp"
#include "magweyl/io.hpp"

using namespace magweyl;
using nlohmann::json;

namespace {

// 0: all checks pass, 1: a check or validation failed, 2: invalid input, 3: runtime failure
enum Exit { ok = 0, failed = 1, bad_input = 2, runtime = 3 };

struct Common {
  std::string preset = "abelian1";
  int grid = 0;
  double half_width = 0.0;
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--preset", c.preset, "algebra preset")->check(CLI::IsMember(preset_names()));
  app->add_option("--grid", c.grid, "points per axis for both grids");
  app->add_option("--half-width", c.half_width, "half-width for both grids");
  app->add_option("--seed", c.seed, "64-bit seed for probe generation")->each([&](const std::string&) { c.seed_set = true; });
  app->add_option("--out", c.out, "output directory");
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json", "bin"}));
}

void apply(const Common& c, ExperimentConfig& cfg, bool preset_from_flags) {
  if (preset_from_flags) cfg = ExperimentConfig::defaults(c.preset);
  if (c.grid > 0) {
    cfg.position.points = cfg.fourier.points = {c.grid};
    if (cfg.heisenberg_grid) cfg.heisenberg_grid->points = {c.grid};
  }
  if (c.half_width > 0.0) {
    cfg.position.half_widths = cfg.fourier.half_widths = {c.half_width};
    if (cfg.heisenberg_grid) cfg.heisenberg_grid->half_widths = {c.half_width};
  }
  if (c.seed_set) cfg.seed = c.seed;
  if (!c.out.empty()) cfg.out_dir = c.out;
  cfg.formats = {c.format == "bin" ? "csv" : c.format};
  cfg.write_arrays = c.format == "bin";
}

int report(const ExperimentConfig& cfg, const ExperimentReport& r, bool to_disk) {
  if (cfg.formats.front() == "json")
    std::cout << json(r).dump(2) << '\n';
  else
    write_csv(std::cout, r);
  if (to_disk) emit(cfg, r);
  return r.all_pass() ? ok : failed;
}

int run_checks(const Common& c, std::vector<std::string> checks) {
  ExperimentConfig cfg;
  apply(c, cfg, true);
  cfg.checks = std::move(checks);
  return report(cfg, run(cfg), !c.out.empty());
}

json grid_json(const GridSpec& g) { return {{"points", g.points()}, {"half_width", g.half_widths()}}; }

template <typename F>
void write_array(const Common& c, const std::string& stem, const F& f) {
  const std::filesystem::path dir = c.out.empty() ? "." : c.out;
  std::filesystem::create_directories(dir);
  if (c.format == "bin") {
    write_mwps(dir / (stem + ".mwps"), f);
  } else if (c.format == "csv") {
    write_csv(dir / (stem + ".csv"), f);
  } else {
    json j;
    if constexpr (std::is_same_v<F, PhaseSpaceFunction>) {
      j["position"] = grid_json(f.position);
      j["fourier"] = grid_json(f.fourier);
    } else {
      j["grid"] = grid_json(f.grid);
    }
    std::vector<double> re(f.values.size()), im(f.values.size());
    for (Eigen::Index i = 0; i < f.values.size(); ++i) {
      re[i] = f.values.data()[i].real();
      im[i] = f.values.data()[i].imag();
    }
    j["re"] = re;
    j["im"] = im;
    std::ofstream out(dir / (stem + ".json"));
    require(static_cast<bool>(out), Errc::io_failure, "cannot write " + (dir / (stem + ".json")).string());
    out << j.dump() << '\n';
  }
  std::cout << (dir / stem).string() << '.' << (c.format == "bin" ? "mwps" : c.format) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnetic Weyl calculus on nilpotent Lie groups"};
  app.require_subcommand(1);
  set_warning_sink([](const std::string& m) { std::cerr << "warning: " << m << '\n'; });

  Common common;
  std::string algebra_file;
  auto* validate_cmd = app.add_subcommand("validate-algebra", "validate a preset or a structure-constant file");
  validate_cmd->add_option("--preset", common.preset, "algebra preset")->check(CLI::IsMember(preset_names()));
  validate_cmd->add_option("--file", algebra_file, "JSON structure description")->check(CLI::ExistingFile);

  auto* moyal_cmd = app.add_subcommand("moyal-check", "Moyal identity and isometry");
  add_common(moyal_cmd, common);
  auto* wigner_cmd = app.add_subcommand("wigner", "cross-Wigner distribution of the default test pair");
  add_common(wigner_cmd, common);
  double covariance = 1.0;
  auto* op_cmd = app.add_subcommand("op-apply", "apply Op(exp(-c|xi|^2/2)) to the default test function");
  add_common(op_cmd, common);
  op_cmd->add_option("--covariance", covariance, "symbol covariance c")->check(CLI::PositiveNumber);
  std::map<std::string, CLI::App*> check_cmds;
  for (const char* name : {"heisenberg", "lieb", "entropy", "concentration"}) {
    check_cmds[name] = app.add_subcommand(name, std::string(name) + " check, CSV rows on stdout");
    add_common(check_cmds[name], common);
  }
  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run an experiment config");
  run_cmd->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);
  add_common(run_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : bad_input;
  }

  try {
    if (*validate_cmd) {
      const StructureConstants sc = algebra_file.empty() ? preset_structure(common.preset) : load_structure(algebra_file);
      try {
        const Algebra alg = validate(sc);
        std::cout << json{{"valid", true}, {"dim", alg.dim()}, {"step", alg.step()}}.dump() << '\n';
        return ok;
      } catch (const Error& e) {
        std::cout << json{{"valid", false}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump()
                  << '\n';
        return failed;
      }
    }
    if (*moyal_cmd) return run_checks(common, {"moyal", "isometry"});
    for (const auto& [name, cmd] : check_cmds)
      if (*cmd) return run_checks(common, {name});
    if (*wigner_cmd || *op_cmd) {
      ExperimentConfig cfg;
      apply(common, cfg, true);
      const MagneticSetting s = setting_from_config(cfg);
      const int n = s.dim();
      const GridSpec gx = cfg.position.spec(n), gy = cfg.fourier.spec(n);
      const AnalyticTestFunction f = AnalyticTestFunction::standard_gaussian(n);
      if (*wigner_cmd) {
        write_array(common, "wigner", wigner(s, f, f, gy, gx));
      } else {
        const Symbol a = Symbol::dual_gaussian(Eigen::MatrixXd::Identity(n, n) * covariance);
        write_array(common, "op_apply", op_apply(s, a, sample(f, gy)));
      }
      return ok;
    }
    if (*run_cmd) {
      ExperimentConfig cfg = ExperimentConfig::load(config_path);
      const bool fmt_set = run_cmd->count("--format") > 0;
      const std::vector<std::string> formats = cfg.formats;
      const bool arrays = cfg.write_arrays;
      apply(common, cfg, false);
      if (run_cmd->count("--preset")) throw Error(Errc::config_invalid, "--preset conflicts with the config file");
      if (!fmt_set) {
        cfg.formats = formats;
        cfg.write_arrays = arrays;
      }
      if (cfg.formats.empty()) cfg.formats = {"csv"};
      return report(cfg, run(cfg), true);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::config_invalid || e.code() == Errc::parameter_violation ? bad_input : runtime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return runtime;
  }
  return ok;
}
