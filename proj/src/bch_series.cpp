#include "magweyl/bch_series.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

#include "magweyl/error.hpp"

namespace magweyl {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  require(d != 0, Errc::parameter_violation, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  const std::int64_t g = std::gcd(den, o.den);
  return Rational(num * (o.den / g) + o.num * (den / g), den / g * o.den);
}
Rational Rational::operator-(const Rational& o) const { return *this + Rational(-o.num, o.den); }
Rational Rational::operator*(const Rational& o) const {
  const std::int64_t g1 = std::gcd(num < 0 ? -num : num, o.den);
  const std::int64_t g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
  return Rational((num / (g1 ? g1 : 1)) * (o.num / (g2 ? g2 : 1)),
                  (den / (g2 ? g2 : 1)) * (o.den / (g1 ? g1 : 1)));
}
Rational Rational::operator/(const Rational& o) const {
  require(o.num != 0, Errc::parameter_violation, "division by zero rational");
  return *this * Rational(o.den, o.num);
}

namespace {

using Series = std::map<std::string, Rational>;

void accumulate(Series& s, const std::string& w, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = s.try_emplace(w, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) s.erase(it);
  }
}

Series multiply(const Series& a, const Series& b, int max_degree) {
  Series r;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b)
      if (static_cast<int>(wa.size() + wb.size()) <= max_degree) accumulate(r, wa + wb, ca * cb);
  return r;
}

std::int64_t factorial(int k) {
  std::int64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<std::pair<std::string, Rational>> bch_associative_words(int max_degree) {
  require(max_degree >= 1 && max_degree <= 12, Errc::parameter_violation,
          "BCH expansion degree must lie in [1, 12]");
  // E = exp(X) exp(Y) - 1
  Series e;
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b) {
      if (a + b == 0) continue;
      accumulate(e, std::string(a, 'x') + std::string(b, 'y'), Rational(1, factorial(a) * factorial(b)));
    }
  // log(1 + E) = sum_m (-1)^{m+1} E^m / m; E has no constant term so m <= max_degree
  Series log_series;
  Series power = e;
  for (int m = 1; m <= max_degree; ++m) {
    const Rational c(m % 2 == 1 ? 1 : -1, m);
    for (const auto& [w, cw] : power) accumulate(log_series, w, cw * c);
    power = multiply(power, e, max_degree);
  }
  return {log_series.begin(), log_series.end()};
}

std::vector<std::pair<std::string, Rational>> bch_lie_words(int max_degree) {
  std::vector<std::pair<std::string, Rational>> out;
  for (const auto& [w, c] : bch_associative_words(max_degree)) {
    const size_t k = w.size();
    if (k >= 2 && w[k - 1] == w[k - 2]) continue;
    out.emplace_back(w, c / Rational(static_cast<std::int64_t>(k)));
  }
  return out;
}

BchWordTree make_bch_word_tree(int max_degree) {
  BchWordTree tree;
  tree.max_degree = max_degree;
  // key: suffix of the word (the bracket it denotes), value: node index
  std::map<std::string, int> index;
  auto node_for = [&](const std::string& suffix, auto& self) -> int {
    if (auto it = index.find(suffix); it != index.end()) return it->second;
    const int parent = suffix.size() == 1 ? -1 : self(suffix.substr(1), self);
    tree.nodes.push_back({parent, suffix.front(), 0.0L});
    const int id = static_cast<int>(tree.nodes.size()) - 1;
    index.emplace(suffix, id);
    return id;
  };
  for (const auto& [w, c] : bch_lie_words(max_degree)) {
    const int id = node_for(w, node_for);
    tree.nodes[id].coeff += c.to_long_double();
  }
  return tree;
}

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::antisymmetry_violation: return "AntisymmetryViolation";
    case Errc::jacobi_violation: return "JacobiViolation";
    case Errc::ordering_violation: return "OrderingViolation";
    case Errc::not_nilpotent: return "NotNilpotent";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::degree_overflow: return "DegreeOverflow";
    case Errc::gradient_unavailable: return "GradientUnavailable";
    case Errc::grid_mismatch: return "GridMismatch";
    case Errc::invalid_exponent: return "InvalidExponent";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::non_integrable_symbol: return "NonIntegrableSymbol";
    case Errc::certificate_failed: return "CertificateFailed";
    case Errc::parameter_violation: return "ParameterViolation";
    case Errc::config_invalid: return "ConfigInvalid";
    case Errc::io_failure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace magweyl
