#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "magweyl/magnetic.hpp"

namespace magweyl {

/// Names of the bundled algebras: abelian1, abelian2, abelian3, heisenberg3, filiform4.
const std::vector<std::string>& preset_names();
StructureConstants preset_structure(std::string_view name);
Algebra preset_algebra(std::string_view name);

/// `{"dim": n, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": 1.0}}]}` with 1-based indices.
/// Each entry sets [X_i, X_j] and its antisymmetric partner.
StructureConstants structure_from_json(const nlohmann::json& j);
nlohmann::json structure_to_json(const StructureConstants& sc);
StructureConstants load_structure(const std::filesystem::path& path);

/// `[{"component": k, "powers": [..], "coeff": c}, ...]` with 1-based components.
MagneticPotential potential_from_json(const nlohmann::json& j, int dim);
nlohmann::json potential_to_json(const MagneticPotential& a);

}  // namespace magweyl
