#include "magweyl/presets.hpp"

#include <fstream>

namespace magweyl {

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"abelian1", "abelian2", "abelian3", "heisenberg3", "filiform4"};
  return names;
}

StructureConstants preset_structure(std::string_view name) {
  if (name == "abelian1") return StructureConstants(1);
  if (name == "abelian2") return StructureConstants(2);
  if (name == "abelian3") return StructureConstants(3);
  if (name == "heisenberg3") return StructureConstants(3).set_bracket(0, 1, 2, 1.0);
  if (name == "filiform4") {
    StructureConstants sc(4);
    sc.set_bracket(0, 1, 2, 1.0);
    sc.set_bracket(0, 2, 3, 1.0);
    return sc;
  }
  throw Error(Errc::config_invalid, "unknown algebra preset '" + std::string(name) + "'");
}

Algebra preset_algebra(std::string_view name) { return validate(preset_structure(name)); }

StructureConstants structure_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("dim").get<int>();
    StructureConstants sc(n);
    if (j.contains("brackets"))
      for (const auto& b : j.at("brackets")) {
        const int i = b.at("i").get<int>() - 1;
        const int jj = b.at("j").get<int>() - 1;
        for (const auto& [key, value] : b.at("coeffs").items()) {
          const int k = std::stoi(key) - 1;
          sc.set_bracket(i, jj, k, value.get<double>());
        }
      }
    return sc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config_invalid, std::string("malformed algebra description: ") + e.what());
  }
}

nlohmann::json structure_to_json(const StructureConstants& sc) {
  nlohmann::json brackets = nlohmann::json::array();
  for (int i = 0; i < sc.dim(); ++i)
    for (int j = i + 1; j < sc.dim(); ++j) {
      nlohmann::json coeffs = nlohmann::json::object();
      for (int k = 0; k < sc.dim(); ++k)
        if (sc(i, j, k) != 0.0) coeffs[std::to_string(k + 1)] = sc(i, j, k);
      if (!coeffs.empty()) brackets.push_back({{"i", i + 1}, {"j", j + 1}, {"coeffs", coeffs}});
    }
  return {{"dim", sc.dim()}, {"brackets", brackets}};
}

StructureConstants load_structure(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::io_failure, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config_invalid, path.string() + ": " + e.what());
  }
  return structure_from_json(j);
}

MagneticPotential potential_from_json(const nlohmann::json& j, int dim) {
  PolynomialVector<double> comps(dim, Polynomial<double>(dim));
  try {
    for (const auto& m : j) {
      const int k = m.at("component").get<int>() - 1;
      require(k >= 0 && k < dim, Errc::config_invalid, "potential component index out of range");
      const auto powers = m.at("powers").get<std::vector<int>>();
      require(static_cast<int>(powers.size()) == dim, Errc::config_invalid, "potential monomial has wrong arity");
      comps[k].add_term(powers, m.at("coeff").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config_invalid, std::string("malformed potential: ") + e.what());
  }
  return MagneticPotential(std::move(comps));
}

nlohmann::json potential_to_json(const MagneticPotential& a) {
  nlohmann::json out = nlohmann::json::array();
  for (int k = 0; k < a.dim(); ++k)
    for (const auto& [m, c] : a.components()[k].terms()) out.push_back({{"component", k + 1}, {"powers", m}, {"coeff", c}});
  return out;
}

}  // namespace magweyl
