#include "halfelastica/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace halfelastica {

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational make_rational(long long num, long long den) {
  if (num <= 0 || den <= 0) throw std::invalid_argument("rational: numerator and denominator must be positive");
  const long long g = std::gcd(num, den);
  return {num / g, den / g};
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw std::invalid_argument("rational: expected m/n, got '" + text + "'");
  auto parse = [&](std::size_t from, std::size_t to) {
    long long v = 0;
    const char* first = text.data() + from;
    const char* last = text.data() + to;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
      throw std::invalid_argument("rational: expected m/n, got '" + text + "'");
    return v;
  };
  return make_rational(parse(0, slash), parse(slash + 1, text.size()));
}

}  // namespace halfelastica
