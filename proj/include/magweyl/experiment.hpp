#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "magweyl/presets.hpp"
#include "magweyl/uncertainty.hpp"

namespace magweyl {

/// Grid request; scalars broadcast over all axes.
struct GridRequest {
  std::vector<int> points;
  std::vector<double> half_widths;

  GridSpec spec(int dim) const;
};

struct PairSpec {
  Vec x0;
  Vec xi0;
  bool expect_valid = true;
};

struct ExperimentConfig {
  std::string preset = "abelian1";  // preset name, or "custom" with `algebra` set
  nlohmann::json algebra;           // structure description when preset == "custom"
  nlohmann::json potential = nlohmann::json::array();
  std::uint64_t seed = 1;

  GridRequest position{{64}, {8.0}};
  GridRequest fourier{{64}, {8.0}};

  // f1, f2, phi1, phi2
  std::map<std::string, nlohmann::json> functions;

  std::vector<std::string> checks;
  std::map<std::string, double> tolerances;

  std::vector<PairSpec> pairs;  // commutator and heisenberg
  bool jordan_holder_pairs = true;
  int commutator_probes = 16;
  std::optional<GridRequest> heisenberg_grid;

  int certificate_probes = 64;
  Vec gamma_x0;  // a₀(<η, X0>) for the functional-calculus pairing
  double gamma_width = 1.0;
  Eigen::MatrixXd kernel_covariance;
  int kernel_probes = 64;

  std::vector<double> lieb_p{1.0, 1.5, 2.0, 3.0, 4.0};
  std::optional<LiebParameters> lieb_mixed;

  std::vector<double> concentration_eps{0.5};
  int concentration_samples = 512;
  double concentration_p_max = 64.0;

  std::filesystem::path out_dir = "out";
  std::vector<std::string> formats{"csv", "json"};
  bool write_arrays = false;

  /// Every check name understood by run().
  static const std::vector<std::string>& check_names();
  /// Defaults for a bundled preset: grids, pairs and tolerances tuned for it.
  static ExperimentConfig defaults(const std::string& preset);
  /// Start from defaults(preset) and overlay `j`; throws ConfigInvalid.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
  /// Fully resolved form, with every default spelled out.
  nlohmann::json to_json() const;

  double tolerance(const std::string& name) const;
};

struct CheckRow {
  std::string check;
  std::string preset;
  std::string param;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;

  bool operator==(const CheckRow&) const = default;
};

struct ExperimentReport {
  std::vector<CheckRow> rows;

  bool all_pass() const;
  bool operator==(const ExperimentReport&) const = default;
};

void to_json(nlohmann::json& j, const ExperimentReport& r);
void from_json(const nlohmann::json& j, ExperimentReport& r);

/// `check,preset,param,lhs,rhs,margin,pass`, values printed with round-trip precision.
void write_csv(std::ostream& out, const ExperimentReport& r);

/// Runs the selected checks in config order.
ExperimentReport run(const ExperimentConfig& config);

/// Writes report.csv / report.json (per `formats`) and config.json into out_dir.
void emit(const ExperimentConfig& config, const ExperimentReport& report);

/// Builds a test function from its config description.
AnalyticTestFunction function_from_json(const nlohmann::json& j, int dim);

MagneticSetting setting_from_config(const ExperimentConfig& config);

}  // namespace magweyl
