#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace magweyl {

enum class Errc {
  dimension_mismatch,
  antisymmetry_violation,
  jacobi_violation,
  ordering_violation,
  not_nilpotent,
  no_convergence,
  degree_overflow,
  gradient_unavailable,
  grid_mismatch,
  invalid_exponent,
  budget_exceeded,
  non_integrable_symbol,
  certificate_failed,
  parameter_violation,
  config_invalid,
  io_failure,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline void require(bool condition, Errc code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace magweyl
