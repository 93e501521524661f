#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace magweyl {

/// Exact rational number with int64 numerator and positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  long double to_long_double() const {
    return static_cast<long double>(num) / static_cast<long double>(den);
  }
};

/// Homogeneous components of log(exp(X) exp(Y)) in the free associative
/// algebra on two letters, truncated at total degree `max_degree`. Words are
/// strings over {'x', 'y'}; the returned coefficients are exact.
std::vector<std::pair<std::string, Rational>> bch_associative_words(int max_degree);

/// The BCH series rewritten as right-nested brackets: X*Y is the sum over
/// entries of coeff * [w_1, [w_2, ... [w_{k-1}, w_k] ...]]. Words of length 1
/// are the letters themselves. Obtained from the associative words by the
/// Dynkin-Specht-Wever projection (divide by word length); words whose last two
/// letters coincide vanish identically and are dropped.
std::vector<std::pair<std::string, Rational>> bch_lie_words(int max_degree);

/// Bracket words arranged as a suffix tree so shared inner brackets are
/// evaluated once. Each node stands for the right-nested bracket of the word
/// read from the node up to the root.
struct BchWordTree {
  struct Node {
    int parent;       // -1 for a single letter
    char letter;      // 'x' or 'y'
    long double coeff;  // contribution of this bracket to X*Y (may be zero)
  };
  std::vector<Node> nodes;  // parents always precede children
  int max_degree = 0;
};

BchWordTree make_bch_word_tree(int max_degree);

}  // namespace magweyl
