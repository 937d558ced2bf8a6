#pragma once

#include <cmath>

namespace halfelastica::detail {

// Value with first and second derivative along a parameter.
struct Jet {
  double v = 0, d1 = 0, d2 = 0;
  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Jet(double value, double first, double second) : v(value), d1(first), d2(second) {}
};

// g(x) given g, g', g'' at x.v.
inline Jet chain(const Jet& x, double g, double dg, double ddg) {
  return {g, dg * x.d1, ddg * x.d1 * x.d1 + dg * x.d2};
}

inline Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet operator-(const Jet& a) { return {-a.v, -a.d1, -a.d2}; }
inline Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2 * a.d1 * b.d1 + a.v * b.d2};
}
inline Jet reciprocal(const Jet& x) {
  const double r = 1 / x.v;
  return chain(x, r, -r * r, 2 * r * r * r);
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

inline Jet sqrt(const Jet& x) {
  const double r = std::sqrt(x.v);
  return chain(x, r, 0.5 / r, -0.25 / (r * x.v));
}
inline Jet sin(const Jet& x) { return chain(x, std::sin(x.v), std::cos(x.v), -std::sin(x.v)); }
inline Jet cos(const Jet& x) { return chain(x, std::cos(x.v), -std::sin(x.v), -std::cos(x.v)); }
inline Jet sinh(const Jet& x) { return chain(x, std::sinh(x.v), std::cosh(x.v), std::sinh(x.v)); }
inline Jet cosh(const Jet& x) { return chain(x, std::cosh(x.v), std::sinh(x.v), std::cosh(x.v)); }

using std::cos;
using std::cosh;
using std::sin;
using std::sinh;
using std::sqrt;

}  // namespace halfelastica::detail
