#include "halfelastica/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "halfelastica/errors.hpp"

namespace halfelastica {

const char* region_name(Region r) {
  switch (r) {
    case Region::S: return "S";
    case Region::L: return "L";
    case Region::Tminus: return "Tminus";
    case Region::E: return "E";
    case Region::Tplus: return "Tplus";
    case Region::BoundaryMinus: return "BoundaryMinus";
    case Region::BoundaryPlus: return "BoundaryPlus";
    case Region::Outside: return "Outside";
  }
  return "Outside";
}

bool in_moduli_space(Region r) {
  return r == Region::S || r == Region::L || is_timelike(r);
}

bool is_timelike(Region r) {
  return r == Region::Tminus || r == Region::E || r == Region::Tplus;
}

namespace moduli {

namespace {

double polish_cubic_root(double a3, double a2, double a1, double a0, double x) {
  for (int it = 0; it < 4; ++it) {
    const double f = ((a3 * x + a2) * x + a1) * x + a0;
    const double df = (3 * a3 * x + 2 * a2) * x + a1;
    if (df == 0) break;
    const double dx = f / df;
    x -= dx;
    if (std::abs(dx) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(x)) break;
  }
  return x;
}

template <class F>
double bracketed_root(F f, double lo, double hi) {
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                             iters);
  return (r.first + r.second) / 2;
}

}  // namespace

double lambda_equilibrium() {
  static const double v = -2.0 / std::pow(27.0, 0.25);
  return v;
}

double lambda_exceptional() {
  static const double v = -std::pow(std::numbers::phi, 1.25) / 2;
  return v;
}

double P_value(double lambda, double x) {
  const double x3 = x * x * x;
  return x3 * (x + 2 * lambda) + 1;
}

double Q_value(double lambda, double c, double x) {
  const double x2 = x * x;
  return x2 * (x2 + 4 * lambda * x + 4 * (lambda * lambda - c)) - 1;
}

double causal_constant(double lambda, double e2) {
  const double t = e2 * e2 + 2 * lambda * e2;
  return (t - 1) * (t + 1) / (4 * e2 * e2);
}

std::vector<double> real_polynomial_roots(const std::vector<double>& coeffs, double imag_tol) {
  std::size_t first = 0;
  while (first < coeffs.size() && coeffs[first] == 0) ++first;
  const int n = static_cast<int>(coeffs.size() - first) - 1;
  std::vector<double> out;
  if (n < 1) return out;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) comp(0, j) = -coeffs[first + j + 1] / coeffs[first];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  const auto ev = es.eigenvalues();
  for (int i = 0; i < n; ++i)
    if (std::abs(ev[i].imag()) <= imag_tol * std::max(1.0, std::abs(ev[i].real())))
      out.push_back(ev[i].real());
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<double, double> eta_pm(double lambda) {
  if (!(lambda <= lambda_equilibrium()))
    throw DomainError("eta_pm: P_lambda has no positive real roots for lambda > -2/27^(1/4)");
  const double xmin = -1.5 * lambda;
  auto f = [lambda](double x) { return P_value(lambda, x); };
  if (f(xmin) >= -64 * std::numeric_limits<double>::epsilon()) return {xmin, xmin};
  return {bracketed_root(f, 0.0, xmin), bracketed_root(f, xmin, -2 * lambda)};
}

double a_lower(double lambda) {
  if (!(lambda < lambda_equilibrium())) throw DomainError("a_lower: need lambda < -2/27^(1/4)");
  if (lambda <= -1) return std::sqrt(lambda * lambda - 1) - lambda;
  return eta_pm(lambda).first;
}

double b0(double lambda) {
  if (!(lambda <= -1)) throw DomainError("b0: defined only for lambda <= -1");
  return -lambda + std::sqrt(lambda * lambda - 1);
}

double chi(double lambda) {
  if (!(lambda < lambda_equilibrium())) throw DomainError("chi: need lambda < -2/27^(1/4)");
  const double e = eta_pm(lambda).second;
  const double e4 = e * e * e * e;
  const double den = e4 * e4 - 4 * e4 + 3;
  if (!(den > 0)) throw DomainError("chi: lambda too close to -2/27^(1/4)");
  return (e4 - 1) / std::sqrt(den);
}

double e1_companion(double lambda, double e2) {
  const double a3 = e2 * e2, a2 = e2 * e2 * e2 + 4 * e2 * e2 * lambda, a1 = 1, a0 = e2;
  const auto roots = real_polynomial_roots({a3, a2, a1, a0});
  double best = std::numeric_limits<double>::quiet_NaN();
  for (double r : roots)
    if (r > e2 && !(best >= r)) best = r;
  if (std::isnan(best)) throw DomainError("e1_companion: cubic has no real root above e2");
  return polish_cubic_root(a3, a2, a1, a0, best);
}

double cardano_e1(double lambda, double e2) {
  const double B = e2 + 4 * lambda;
  const double a = std::pow(e2 * B, 3) + 9 * e2 * e2 - 18 * lambda * e2;
  const double p = 3 - e2 * e2 * B * B;
  const std::complex<double> disc(a * a + p * p * p, 0.0);
  const std::complex<double> z = -a + std::sqrt(disc);
  const std::complex<double> w = std::pow(z, 1.0 / 3.0);
  return (-B * e2 + 2 * w.real()) / (3 * e2);
}

double cardano_e1_printed(double lambda, double e2) {
  const double l = lambda, x = e2;
  const double a = std::pow(x, 6) + 12 * l * std::pow(x, 5) + 48 * l * l * std::pow(x, 4) +
                   64 * l * l * l * std::pow(x, 3) + 9 * x * x - 18 * l * x;
  const double b = std::pow(x, 8) + 12 * l * std::pow(x, 7) + 48 * l * l * std::pow(x, 6) +
                   64 * l * l * l * std::pow(x, 5) + 2 * std::pow(x, 4) - 20 * l * std::pow(x, 3) +
                   4 * l * l * x * x + 1;
  const std::complex<double> z = -8.0 * (a + 3.0 * std::sqrt(std::complex<double>(3 * b, 0.0)));
  return ((x + 4 * l) * x + std::pow(z, 1.0 / 3.0).real()) / (3 * x);
}

QuarticData roots_from_modulus(const ModulusPoint& p) {
  const double l = p.lambda, e2 = p.e2;
  if (!(e2 > 0 && P_value(l, e2) < 0))
    throw DomainError("roots_from_modulus: (" + std::to_string(l) + ", " + std::to_string(e2) +
                      ") is outside the moduli space");
  const double e1 = e1_companion(l, e2);
  const double sum = e1 + e2;
  const double S = sum + std::sqrt(4 * std::pow(e1 * e2, 3) + sum * sum);
  QuarticData q;
  q.e1 = e1;
  q.e2 = e2;
  q.e3 = S / (2 * e1 * e1 * e2 * e2);
  q.e4 = -2 * e1 * e2 / S;
  q.c = causal_constant(l, e2);
  return q;
}

double reconstruct_lambda(double e1, double e2) {
  return -(e1 * e1 * e1 * e2 * e2 + e1 * e1 * e2 * e2 * e2 + e1 + e2) / (4 * e1 * e1 * e2 * e2);
}

double reconstruct_c(double e1, double e2) {
  const double e12 = e1 * e1, e22 = e2 * e2;
  const double num = -2 * std::pow(e1 * e2, 5) + std::pow(e1, 6) * std::pow(e2, 4) +
                     std::pow(e1, 4) * std::pow(e2, 6) - 2 * (e12 * e12 * e22 + e12 * e22 * e22) +
                     (e1 + e2) * (e1 + e2);
  return num / (16 * e12 * e12 * e22 * e22);
}

double exceptional_c(double lambda) {
  if (!(lambda < lambda_exceptional()))
    throw DomainError("exceptional_c: need lambda < -phi^(5/4)/2");
  // Substituting e1 = -2 lambda into the cubic for e1 gives a cubic in e2.
  const double a3 = 4 * lambda * lambda, a2 = 8 * lambda * lambda * lambda, a1 = 1, a0 = -2 * lambda;
  const auto roots = real_polynomial_roots({a3, a2, a1, a0});
  if (roots.empty()) throw DomainError("exceptional_c: no real root");
  const double c = polish_cubic_root(a3, a2, a1, a0, roots.back());
  const double e1 = e1_companion(lambda, c);
  if (!(std::abs(e1 + 2 * lambda) <= kLocusTol))
    throw ConvergenceError("exceptional_c: e1 + 2 lambda residual too large", std::abs(e1 + 2 * lambda));
  return c;
}

LocusFunctions locus_functions(double lambda) {
  const auto [em, ep] = eta_pm(lambda);
  LocusFunctions f;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  f.eta_minus = em;
  f.eta_plus = ep;
  const bool strict = lambda < lambda_equilibrium();
  f.a_lower = strict ? a_lower(lambda) : nan;
  f.b0 = lambda <= -1 ? b0(lambda) : nan;
  f.c_exc = lambda < lambda_exceptional() ? exceptional_c(lambda) : nan;
  f.chi = strict && em != ep ? chi(lambda) : std::numeric_limits<double>::infinity();
  return f;
}

ModulusPoint classify_region(double lambda, double e2) {
  ModulusPoint p{lambda, e2, Region::Outside};
  if (!(e2 > 0) || !std::isfinite(lambda) || !std::isfinite(e2)) return p;
  const double P = P_value(lambda, e2);
  if (std::abs(P) <= kLocusTol) {
    if (lambda <= lambda_equilibrium())
      p.region = e2 < -1.5 * lambda ? Region::BoundaryMinus : Region::BoundaryPlus;
    return p;
  }
  if (P > 0) return p;
  const double l = e2 * e2 + 2 * lambda * e2 + 1;
  if (std::abs(l) <= kLocusTol) {
    p.region = Region::L;
  } else if (l < 0) {
    p.region = Region::S;
  } else if (lambda < lambda_exceptional()) {
    const double c = exceptional_c(lambda);
    if (std::abs(e2 - c) <= kLocusTol)
      p.region = Region::E;
    else
      p.region = e2 < c ? Region::Tminus : Region::Tplus;
  } else {
    p.region = Region::Tplus;
  }
  return p;
}

std::vector<double> closed_circle_curvatures(double lambda) {
  if (lambda > lambda_equilibrium()) return {};
  const auto [em, ep] = eta_pm(lambda);
  if (em == ep) return {ep * ep};
  std::vector<double> out;
  if (em > 1) out.push_back(em * em);
  out.push_back(ep * ep);
  return out;
}

}  // namespace moduli
}  // namespace halfelastica
