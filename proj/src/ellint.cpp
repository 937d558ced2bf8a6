#include "halfelastica/ellint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "halfelastica/errors.hpp"

namespace halfelastica::ellint {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHalfPi = std::numbers::pi / 2;

void require_parameter(double m, const char* who) {
  if (!(m >= 0.0 && m < 1.0))
    throw DomainError(std::string(who) + ": parameter m must lie in [0,1), got " +
                      std::to_string(m));
}

void require_characteristic(double n, const char* who) {
  if (!(n < 1.0))
    throw DomainError(std::string(who) + ": characteristic n must be < 1, got " +
                      std::to_string(n));
}

void require_amplitude(double phi, const char* who) {
  if (!(phi >= 0.0 && phi <= kHalfPi + 4 * kEps))
    throw DomainError(std::string(who) + ": amplitude must lie in [0, pi/2], got " +
                      std::to_string(phi));
}

double log_term(double m1) { return std::log(4.0 / std::sqrt(m1)); }

}  // namespace

double carlson_rc(double x, double y) {
  if (x < 0 || y <= 0) throw DomainError("carlson_rc: need x >= 0, y > 0");
  const double a0 = (x + 2 * y) / 3;
  double q = std::pow(3 * kEps, -1.0 / 8) * std::abs(a0 - x);
  double a = a0;
  double fac = 1;
  const double y0 = y;
  while (q * fac >= std::abs(a)) {
    const double lam = 2 * std::sqrt(x) * std::sqrt(y) + y;
    x = (x + lam) / 4;
    y = (y + lam) / 4;
    a = (a + lam) / 4;
    fac /= 4;
  }
  const double s = (y0 - a0) * fac / a;
  const double s2 = s * s;
  return (1 + s2 * (3.0 / 10 + s * (1.0 / 7 + s * (3.0 / 8 + s * (9.0 / 22 + s * (159.0 / 208 + s * 9.0 / 8)))))) /
         std::sqrt(a);
}

double carlson_rf(double x, double y, double z) {
  if (x < 0 || y < 0 || z < 0) throw DomainError("carlson_rf: negative argument");
  if (x + y == 0 || y + z == 0 || z + x == 0)
    throw DomainError("carlson_rf: at most one argument may vanish");
  const double a0 = (x + y + z) / 3;
  double q = std::pow(3 * kEps, -1.0 / 6) *
             std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  double a = a0;
  double fac = 1;
  const double x0 = x, y0 = y;
  while (q * fac >= std::abs(a)) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sy * sz + sz * sx;
    x = (x + lam) / 4;
    y = (y + lam) / 4;
    z = (z + lam) / 4;
    a = (a + lam) / 4;
    fac /= 4;
  }
  const double X = (a0 - x0) * fac / a;
  const double Y = (a0 - y0) * fac / a;
  const double Z = -X - Y;
  const double e2 = X * Y - Z * Z;
  const double e3 = X * Y * Z;
  return (1 - e2 / 10 + e3 / 14 + e2 * e2 / 24 - 3 * e2 * e3 / 44) / std::sqrt(a);
}

double carlson_rd(double x, double y, double z) {
  if (x < 0 || y < 0 || z <= 0) throw DomainError("carlson_rd: invalid argument");
  if (x + y == 0) throw DomainError("carlson_rd: x + y must be positive");
  const double a0 = (x + y + 3 * z) / 5;
  double q = std::pow(kEps / 4, -1.0 / 6) *
             std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  double a = a0;
  double fac = 1;
  double sum = 0;
  const double x0 = x, y0 = y;
  while (q * fac >= std::abs(a)) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sy * sz + sz * sx;
    sum += fac / (sz * (z + lam));
    x = (x + lam) / 4;
    y = (y + lam) / 4;
    z = (z + lam) / 4;
    a = (a + lam) / 4;
    fac /= 4;
  }
  const double X = (a0 - x0) * fac / a;
  const double Y = (a0 - y0) * fac / a;
  const double Z = -(X + Y) / 3;
  const double xy = X * Y, z2 = Z * Z;
  const double e2 = xy - 6 * z2;
  const double e3 = (3 * xy - 8 * z2) * Z;
  const double e4 = 3 * (xy - z2) * z2;
  const double e5 = xy * Z * z2;
  const double series = 1 - 3 * e2 / 14 + e3 / 6 + 9 * e2 * e2 / 88 - 3 * e4 / 22 -
                        9 * e2 * e3 / 52 + 3 * e5 / 26;
  return fac * series / (a * std::sqrt(a)) + 3 * sum;
}

double carlson_rj(double x, double y, double z, double p) {
  if (x < 0 || y < 0 || z < 0 || p <= 0) throw DomainError("carlson_rj: invalid argument");
  if (x + y == 0 || y + z == 0 || z + x == 0)
    throw DomainError("carlson_rj: at most one of x, y, z may vanish");
  const double a0 = (x + y + z + 2 * p) / 5;
  const double delta = (p - x) * (p - y) * (p - z);
  double q = std::pow(kEps / 4, -1.0 / 6) *
             std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z), std::abs(a0 - p)});
  double a = a0;
  double fac = 1;
  double sum = 0;
  const double x0 = x, y0 = y, z0 = z;
  while (q * fac >= std::abs(a)) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z), sp = std::sqrt(p);
    const double lam = sx * sy + sy * sz + sz * sx;
    const double d = (sp + sx) * (sp + sy) * (sp + sz);
    const double e = delta * fac * fac * fac / (d * d);
    sum += fac * carlson_rc(1, 1 + e) / d;
    x = (x + lam) / 4;
    y = (y + lam) / 4;
    z = (z + lam) / 4;
    p = (p + lam) / 4;
    a = (a + lam) / 4;
    fac /= 4;
  }
  const double X = (a0 - x0) * fac / a;
  const double Y = (a0 - y0) * fac / a;
  const double Z = (a0 - z0) * fac / a;
  const double P = -(X + Y + Z) / 2;
  const double p2 = P * P;
  const double e2 = X * Y + X * Z + Y * Z - 3 * p2;
  const double e3 = X * Y * Z + 2 * e2 * P + 4 * P * p2;
  const double e4 = (2 * X * Y * Z + e2 * P + 3 * P * p2) * P;
  const double e5 = X * Y * Z * p2;
  const double series = 1 - 3 * e2 / 14 + e3 / 6 + 9 * e2 * e2 / 88 - 3 * e4 / 22 -
                        9 * e2 * e3 / 52 + 3 * e5 / 26;
  return fac * series / (a * std::sqrt(a)) + 6 * sum;
}

double complete_K_comp(double m1) {
  if (!(m1 > 0.0 && m1 <= 1.0))
    throw DomainError("complete_K: complementary parameter must lie in (0,1], got " +
                      std::to_string(m1));
  if (m1 < kNearOneThreshold) {
    const double L = log_term(m1);
    return L + m1 / 4 * (L - 1);
  }
  return carlson_rf(0, m1, 1);
}

double complete_E_comp(double m1) {
  if (!(m1 >= 0.0 && m1 <= 1.0))
    throw DomainError("complete_E: complementary parameter must lie in [0,1], got " +
                      std::to_string(m1));
  if (m1 == 0) return 1;
  if (m1 < kNearOneThreshold) return 1 + m1 / 2 * (log_term(m1) - 0.5);
  return carlson_rf(0, m1, 1) - (1 - m1) / 3 * carlson_rd(0, m1, 1);
}

double complete_Pi_comp(double n, double m1) {
  require_characteristic(n, "complete_Pi");
  if (!(m1 > 0.0 && m1 <= 1.0))
    throw DomainError("complete_Pi: complementary parameter must lie in (0,1], got " +
                      std::to_string(m1));
  if (m1 < kNearOneThreshold) {
    // sqrt(-n) atan(sqrt(-n)) continued to n > 0 as -sqrt(n) atanh(sqrt(n)).
    const double corr = n <= 0 ? std::sqrt(-n) * std::atan(std::sqrt(-n))
                               : -std::sqrt(n) * std::atanh(std::sqrt(n));
    return (log_term(m1) + corr) / (1 - n);
  }
  const double k = carlson_rf(0, m1, 1);
  if (n == 0) return k;
  if (n > 0) return k + n / 3 * carlson_rj(0, m1, 1, 1 - n);
  // n < 0: map to N = (m - n) / (1 - n) in (m, 1), where every term is positive.
  const double m = 1 - m1;
  const double big_n = (m - n) / (1 - n);
  const double pi_big = k + big_n / 3 * carlson_rj(0, m1, 1, m1 / (1 - n));
  return m / (m - n) * k - n * m1 / ((1 - n) * (m - n)) * pi_big;
}

double complete_K(double m) {
  require_parameter(m, "complete_K");
  return complete_K_comp(1 - m);
}

double complete_E(double m) {
  if (!(m >= 0.0 && m <= 1.0))
    throw DomainError("complete_E: parameter m must lie in [0,1], got " + std::to_string(m));
  return complete_E_comp(1 - m);
}

double complete_Pi(double n, double m) {
  require_characteristic(n, "complete_Pi");
  require_parameter(m, "complete_Pi");
  return complete_Pi_comp(n, 1 - m);
}

double incomplete_F(double phi, double m) {
  require_parameter(m, "incomplete_F");
  require_amplitude(phi, "incomplete_F");
  if (phi == 0) return 0;
  const double s = std::sin(phi), c = std::cos(phi);
  return s * carlson_rf(c * c, 1 - m * s * s, 1);
}

double incomplete_E(double phi, double m) {
  require_parameter(m, "incomplete_E");
  require_amplitude(phi, "incomplete_E");
  if (phi == 0) return 0;
  const double s = std::sin(phi), c = std::cos(phi);
  const double c2 = c * c, d2 = 1 - m * s * s;
  return s * carlson_rf(c2, d2, 1) - m / 3 * s * s * s * carlson_rd(c2, d2, 1);
}

double incomplete_Pi(double n, double phi, double m) {
  require_characteristic(n, "incomplete_Pi");
  require_parameter(m, "incomplete_Pi");
  require_amplitude(phi, "incomplete_Pi");
  if (phi == 0) return 0;
  const double s = std::sin(phi), c = std::cos(phi);
  const double c2 = c * c, s2 = s * s, d2 = 1 - m * s2;
  double value = s * carlson_rf(c2, d2, 1);
  if (n != 0) value += n / 3 * s * s2 * carlson_rj(c2, d2, 1, 1 - n * s2);
  return value;
}

double jacobi_am(double u, double m) {
  require_parameter(m, "jacobi_am");
  if (m == 0) return u;
  // Arithmetic-geometric mean with backward amplitude recursion.
  constexpr int kMax = 64;
  double ratio[kMax];
  double a = 1, b = std::sqrt(1 - m), c = std::sqrt(m);
  int n = 0;
  while (std::abs(c) > kEps * a && n < kMax) {
    const double an = (a + b) / 2;
    c = (a - b) / 2;
    b = std::sqrt(a * b);
    a = an;
    ratio[n++] = c / a;
  }
  double phi = std::ldexp(a * u, n);
  for (int k = n - 1; k >= 0; --k) phi = (phi + std::asin(ratio[k] * std::sin(phi))) / 2;
  return phi;
}

double jacobi_sn(double u, double m) { return std::sin(jacobi_am(u, m)); }

double inverse_sn(double x, double m) {
  require_parameter(m, "inverse_sn");
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("inverse_sn: x must lie in [0,1], got " + std::to_string(x));
  if (x == 0) return 0;
  if (x == 1) return complete_K(m);
  return x * carlson_rf(1 - x * x, 1 - m * x * x, 1);
}

QuadResult quad_oracle_gaps(const std::function<double(double, double, double)>& f,
                            double a, double b, double tol) {
  const double width = b - a;
  auto g = [&](double t) {
    const double s = std::sin(t), c = std::cos(t);
    const double lo = width * s * s, hi = width * c * c;
    const double x = lo < hi ? a + lo : b - hi;
    return f(x, lo, hi) * 2 * width * s * c;
  };
  double err = 0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      g, 0.0, kHalfPi, 20, std::max(tol, 4 * kEps), &err);
  if (!(err <= tol * std::max(1.0, std::abs(value))))
  {
    char buf[128];
    std::snprintf(buf, sizeof buf, "quad_oracle: error estimate %.3e exceeds tolerance %.3e", err, tol);
    throw ConvergenceError(buf, err);
  }
  return {value, err};
}

QuadResult quad_oracle(const std::function<double(double)>& f, double a, double b,
                       double tol) {
  // Nodes that round onto an endpoint are moved to the nearest interior double.
  const double lo_x = std::nextafter(a, b), hi_x = std::nextafter(b, a);
  return quad_oracle_gaps([&](double x, double, double) { return f(std::clamp(x, lo_x, hi_x)); }, a, b, tol);
}

}  // namespace halfelastica::ellint
