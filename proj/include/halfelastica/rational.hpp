#pragma once

#include <string>

namespace halfelastica {

// Positive rational m/n kept in lowest terms.
struct Rational {
  long long num = 1;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

Rational make_rational(long long num, long long den);
// Accepts "m/n" with positive integers; throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);

}  // namespace halfelastica
