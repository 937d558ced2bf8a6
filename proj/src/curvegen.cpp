#include "halfelastica/curvegen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "detail/integrate.hpp"
#include "detail/jet.hpp"
#include "halfelastica/ellint.hpp"
#include "halfelastica/errors.hpp"

namespace halfelastica {

MinkowskiVector operator+(const MinkowskiVector& a, const MinkowskiVector& b) {
  return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
}
MinkowskiVector operator-(const MinkowskiVector& a, const MinkowskiVector& b) {
  return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
}
MinkowskiVector operator*(double k, const MinkowskiVector& a) { return {k * a.x1, k * a.x2, k * a.x3}; }

double minkowski_inner(const MinkowskiVector& a, const MinkowskiVector& b) {
  return -a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

MinkowskiVector minkowski_cross(const MinkowskiVector& a, const MinkowskiVector& b) {
  return {-(a.x2 * b.x3 - a.x3 * b.x2), a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}

double coordinate_norm(const MinkowskiVector& a) { return std::sqrt(a.x1 * a.x1 + a.x2 * a.x2 + a.x3 * a.x3); }

Eigen::Vector3d to_eigen(const MinkowskiVector& a) { return {a.x1, a.x2, a.x3}; }
MinkowskiVector from_eigen(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }

const char* curve_kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::BL: return "BL";
    case CurveKind::BS: return "BS";
    case CurveKind::BT: return "BT";
  }
  return "BT";
}

const char* monodromy_class_name(MonodromyClass k) {
  switch (k) {
    case MonodromyClass::Parabolic: return "Parabolic";
    case MonodromyClass::HyperbolicRotation: return "HyperbolicRotation";
    case MonodromyClass::EllipticRotation: return "EllipticRotation";
  }
  return "EllipticRotation";
}

namespace curvegen {

namespace {

using detail::Jet;
constexpr double kPi = std::numbers::pi;

struct Family {
  CurveKind kind;
  bool exceptional = false;
  double lambda, c, root_c;
  QuarticData q;
  double d;  // e1 + 2 lambda
  double omega;
};

CurveKind kind_for(Region r) {
  switch (r) {
    case Region::L: return CurveKind::BL;
    case Region::S: return CurveKind::BS;
    case Region::Tminus:
    case Region::E:
    case Region::Tplus: return CurveKind::BT;
    default: break;
  }
  throw RegionError(std::string("no B-curve family for region ") + region_name(r));
}

Family make_family(const ModulusPoint& p, CurveKind expected, const char* who) {
  const auto r = moduli::classify_region(p.lambda, p.e2).region;
  if (!in_moduli_space(r) || kind_for(r) != expected)
    throw RegionError(std::string(who) + ": modulus lies in region " + region_name(r));
  Family f;
  f.kind = expected;
  f.exceptional = r == Region::E;
  f.lambda = p.lambda;
  f.q = moduli::roots_from_modulus(p);
  f.c = expected == CurveKind::BL ? 0.0 : f.q.c;
  f.root_c = std::sqrt(std::abs(f.c));
  f.d = f.q.e1 + 2 * p.lambda;
  f.omega = dynamics::wavelength(f.q);
  return f;
}

template <class T>
T cubic_factor(const Family& f, const T& mu) {
  return (mu - f.q.e2) * (mu - f.q.e3) * (mu - f.q.e4);
}

// e1 - mu. In the upper half of the orbit it is recovered from the
// conservation law mu'^2 = mu^2 (e1 - mu)(mu - e2)(mu - e3)(mu - e4), which
// stays non-negative and smooth through the turning point.
double gap_value(const Family& f, double mu, double mu_dot) {
  const double e1 = f.q.e1, e2 = f.q.e2;
  if (mu - e2 > 0.5 * (e1 - e2)) return mu_dot * mu_dot / (mu * mu * cubic_factor(f, mu));
  return e1 - mu;
}

Jet gap_jet(const Family& f, const Jet& mu) {
  return {gap_value(f, mu.v, mu.d1), -mu.d1, -mu.d2};
}

// 1 + 4 c mu^2 written so that it keeps relative accuracy near mu = e1 when
// 1 + 4 c e1^2 is small.
template <class T>
T one_plus(const Family& f, const T& mu, const T& gap) {
  const double e1 = f.q.e1;
  return T(e1 * e1 * f.d * f.d) - 4 * f.c * (gap * (e1 + mu));
}

template <class T>
T rate(const Family& f, const T& mu, const T& gap) {
  const double l = f.lambda;
  switch (f.kind) {
    case CurveKind::BL: return -(mu * mu) * (mu + 2 * l);
    case CurveKind::BS: return 2 * f.root_c * (mu * mu) * (mu + 2 * l) / (1 + 4 * f.c * (mu * mu));
    case CurveKind::BT:
      if (f.exceptional) return -8 * f.root_c * l * l * (mu * mu) / (mu - 2 * l);
      return 2 * f.root_c * (mu * mu) * (f.d - gap) / one_plus(f, mu, gap);
  }
  return T(0.0);
}

double rate_value(const Family& f, double mu, double mu_dot) {
  return rate(f, mu, gap_value(f, mu, mu_dot));
}

// Signed radial function of a BT-curve as a jet in s.
Jet radial_jet(const Family& f, const Jet& mu, double s) {
  const double two_rc = 2 * f.root_c;
  const Jet gap = gap_jet(f, mu);
  if (!f.exceptional) return detail::sqrt(one_plus(f, mu, gap)) / (two_rc * mu);
  const double e1 = f.q.e1, e2 = f.q.e2;
  if (mu.v - e2 < 0.5 * (e1 - e2)) {
    const double sigma = std::cos(kPi * s / f.omega) >= 0 ? 1.0 : -1.0;
    const Jet r = detail::sqrt(one_plus(f, mu, gap)) / (two_rc * mu);
    return {sigma * r.v, sigma * r.d1, sigma * r.d2};
  }
  // Near mu = e1 write rho = w sqrt(e1 + mu) / mu with w^2 = e1 - mu and
  // 2 w w' = -mu', which is smooth through the zero of the radial function.
  const double tau = std::sin(kPi * s / f.omega) >= 0 ? 1.0 : -1.0;
  const Jet g = mu * detail::sqrt(cubic_factor(f, mu));
  const Jet w{mu.d1 / (tau * g.v), -tau * g.v / 2, -tau * g.d1 / 2};
  return w * detail::sqrt(e1 + mu) / mu;
}

std::array<Jet, 3> gamma_jet(const Family& f, const Jet& mu, const Jet& theta, double s) {
  switch (f.kind) {
    case CurveKind::BL: {
      const Jet k = 1 / (2 * std::numbers::sqrt2 * mu);
      const Jet base = 2 * (theta * theta) + 2 * (mu * mu);
      return {(base + 1) * k, 2 * std::numbers::sqrt2 * theta * k, (base - 1) * k};
    }
    case CurveKind::BS: {
      const Jet inv = 1 / (2 * f.root_c * mu);
      const Jet rho = detail::sqrt(1 + 4 * f.c * (mu * mu)) * inv;
      return {rho * detail::cosh(theta), rho * detail::sinh(theta), inv};
    }
    case CurveKind::BT: {
      const Jet rho = radial_jet(f, mu, s);
      return {1 / (2 * f.root_c * mu), -(rho * detail::cos(theta)), rho * detail::sin(theta)};
    }
  }
  return {};
}

MinkowskiVector value_of(const std::array<Jet, 3>& g) { return {g[0].v, g[1].v, g[2].v}; }
MinkowskiVector first_of(const std::array<Jet, 3>& g) { return {g[0].d1, g[1].d1, g[2].d1}; }
MinkowskiVector second_of(const std::array<Jet, 3>& g) { return {g[0].d2, g[1].d2, g[2].d2}; }

std::array<double, 2> poincare_unchecked(const MinkowskiVector& x) {
  return {x.x2 / (1 + x.x1), x.x3 / (1 + x.x1)};
}

CurveSamples build_curve(const ModulusPoint& p, CurveKind kind, const std::vector<double>& grid,
                         const StepControl& ctrl, const char* who) {
  const Family f = make_family(p, kind, who);
  const auto phase =
      dynamics::integrate_phase(p.lambda, p.e2, grid,
                                [&f](double mu, double y) { return rate_value(f, mu, y); }, ctrl);
  CurveSamples out;
  out.modulus = moduli::classify_region(p.lambda, p.e2);
  out.roots = f.q;
  out.kind = kind;
  out.wavelength = f.omega;
  out.samples.reserve(phase.size());
  out.theta.reserve(phase.size());
  for (const auto& ph : phase) {
    const double mu_ddot = dynamics::phase_field(p.lambda, ph.mu, ph.mu_dot)[1];
    const Jet mu{ph.mu, ph.mu_dot, mu_ddot};
    const Jet r = rate(f, mu, gap_jet(f, mu));
    const Jet theta{ph.theta, r.v, r.d1};
    const auto g = gamma_jet(f, mu, theta, ph.s);
    CurveSample smp{ph.s, ph.mu, ph.mu_dot, value_of(g), first_of(g), second_of(g), {}};
    if (kind == CurveKind::BT) {
      const double rho = radial_jet(f, Jet(ph.mu, ph.mu_dot, mu_ddot), ph.s).v;
      const double k = 2 * f.root_c * rho * ph.mu / (1 + 2 * f.root_c * ph.mu);
      smp.poincare = {-k * std::cos(ph.theta), k * std::sin(ph.theta)};
    } else {
      smp.poincare = poincare_unchecked(smp.gamma);
    }
    out.samples.push_back(smp);
    out.theta.push_back(ph.theta);
  }
  return out;
}

}  // namespace

CurveSamples bl_curve(const ModulusPoint& p, const std::vector<double>& grid, const StepControl& ctrl) {
  return build_curve(p, CurveKind::BL, grid, ctrl, "bl_curve");
}

CurveSamples bs_curve(const ModulusPoint& p, const std::vector<double>& grid, const StepControl& ctrl) {
  return build_curve(p, CurveKind::BS, grid, ctrl, "bs_curve");
}

CurveSamples bt_curve(const ModulusPoint& p, const std::vector<double>& grid, const StepControl& ctrl) {
  return build_curve(p, CurveKind::BT, grid, ctrl, "bt_curve");
}

CurveSamples generate_curve(const ModulusPoint& p, const std::vector<double>& grid,
                            const StepControl& ctrl) {
  const auto r = moduli::classify_region(p.lambda, p.e2).region;
  return build_curve(p, kind_for(r), grid, ctrl, "generate_curve");
}

CurveSamples generate_curve(const ModulusPoint& p, double periods, int samples_per_period,
                            const StepControl& ctrl) {
  const double omega = dynamics::wavelength(p);
  return generate_curve(p, dynamics::period_grid(omega, samples_per_period, periods), ctrl);
}

double theta_rate(const ModulusPoint& p, double mu, double mu_dot) {
  const auto r = moduli::classify_region(p.lambda, p.e2).region;
  return rate_value(make_family(p, kind_for(r), "theta_rate"), mu, mu_dot);
}

std::vector<double> radial_function(const ModulusPoint& p, const std::vector<double>& grid,
                                    const StepControl& ctrl) {
  const Family f = make_family(p, CurveKind::BT, "radial_function");
  const auto phase = dynamics::integrate_phase(p.lambda, p.e2, grid, nullptr, ctrl);
  std::vector<double> out;
  out.reserve(phase.size());
  for (const auto& ph : phase) out.push_back(radial_jet(f, Jet(ph.mu, ph.mu_dot, 0.0), ph.s).v);
  return out;
}

std::vector<double> angular_function(const ModulusPoint& p, const std::vector<double>& grid,
                                     const StepControl& ctrl) {
  const Family f = make_family(p, CurveKind::BT, "angular_function");
  const auto phase =
      dynamics::integrate_phase(p.lambda, p.e2, grid,
                                [&f](double mu, double y) { return rate_value(f, mu, y); }, ctrl);
  std::vector<double> out;
  out.reserve(phase.size());
  for (const auto& ph : phase) out.push_back(ph.theta);
  return out;
}

std::pair<double, double> annulus_radii(const ModulusPoint& p) {
  const Family f = make_family(p, CurveKind::BT, "annulus_radii");
  const double e1 = f.q.e1, e2 = f.q.e2;
  const double inner = f.exceptional ? 0.0 : e1 * std::abs(f.d) / (1 + 2 * f.root_c * e1);
  const double outer = std::sqrt(one_plus(f, e2, f.q.e1 - e2)) / (1 + 2 * f.root_c * e2);
  return {inner, outer};
}

double upsilon_plus(double lambda, double e2) {
  const double c = moduli::causal_constant(lambda, e2);
  if (!(c > 0)) throw DomainError("upsilon_plus: needs c > 0");
  return 1 / (2 * std::sqrt(c) * e2 + std::sqrt(1 + 4 * c * e2 * e2));
}

double upsilon_star(double lambda) {
  if (!(lambda < -1)) throw DomainError("upsilon_star: needs lambda < -1");
  return upsilon_plus(lambda, moduli::eta_pm(lambda).first);
}

double upsilon_return_point(double lambda) {
  const double target = upsilon_star(lambda);
  const double hi = moduli::b0(lambda);
  auto f = [&](double e2) { return upsilon_plus(lambda, e2) - target; };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, -lambda, hi * (1 - 1e-12),
                                                   boost::math::tools::eps_tolerance<double>(50), iters);
  return (r.first + r.second) / 2;
}

MinkowskiVector momentum(const MinkowskiVector& gamma, const MinkowskiVector& tangent, double mu,
                         double mu_dot, double lambda) {
  if (!(mu > 0)) throw DomainError("momentum: needs mu > 0");
  return (1 / (2 * mu)) * gamma + (mu_dot / (2 * mu * mu)) * tangent -
         (lambda + mu / 2) * minkowski_cross(gamma, tangent);
}

std::array<double, 2> to_poincare(const MinkowskiVector& x) {
  const double norm = minkowski_inner(x, x);
  if (!(x.x1 > 0) || !(std::abs(norm + 1) <= 1e-8 * std::max(1.0, x.x1 * x.x1)))
    throw DomainError("to_poincare: point is not on the upper hyperboloid");
  return poincare_unchecked(x);
}

MinkowskiVector from_poincare(const std::array<double, 2>& z) {
  const double r2 = z[0] * z[0] + z[1] * z[1];
  if (!(r2 < 1)) throw DomainError("from_poincare: point is outside the unit disk");
  const double k = 1 / (1 - r2);
  return {(1 + r2) * k, 2 * z[0] * k, 2 * z[1] * k};
}

double bending_energy(const CurveSamples& curve, double lambda) {
  double total = 0;
  const auto& s = curve.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].mu > 0)) throw DomainError("bending_energy: curve is not convex");
    if (i > 0) total += 0.5 * (s[i].s - s[i - 1].s) * (s[i].mu + s[i - 1].mu + 2 * lambda);
  }
  return total;
}

Eigen::Matrix3d parabolic_rotation(double t) {
  Eigen::Matrix3d m;
  m << 1 + t * t / 2, t, -t * t / 2, t, 1, -t, t * t / 2, t, 1 - t * t / 2;
  return m;
}

Eigen::Matrix3d hyperbolic_rotation(double t) {
  Eigen::Matrix3d m;
  m << std::cosh(t), std::sinh(t), 0, std::sinh(t), std::cosh(t), 0, 0, 0, 1;
  return m;
}

Eigen::Matrix3d minkowski_form() { return Eigen::Vector3d(-1, 1, 1).asDiagonal(); }

Eigen::Matrix3d frame_at(const CurveSample& smp) {
  Eigen::Matrix3d f;
  f.col(0) = to_eigen(smp.gamma);
  f.col(1) = to_eigen(smp.tangent);
  f.col(2) = to_eigen(minkowski_cross(smp.gamma, smp.tangent));
  return f;
}

FrenetPath frenet_oracle(const ModulusPoint& p, const std::vector<double>& grid,
                         const StepControl& ctrl) {
  if (!in_moduli_space(moduli::classify_region(p.lambda, p.e2).region))
    throw RegionError("frenet_oracle: modulus outside the moduli space");
  using State = std::array<double, 11>;
  const double lambda = p.lambda;
  State x0{};
  x0[0] = p.e2;
  x0[2] = x0[6] = x0[10] = 1;
  auto rhs = [lambda](const State& x, State& dx) {
    const double mu = x[0], y = x[1];
    const double mu4 = mu * mu * mu * mu;
    const double kappa = mu * mu;
    dx[0] = y;
    dx[1] = 2 * y * y / mu - mu - 2 * lambda * mu4 - mu4 * mu;
    for (int i = 0; i < 3; ++i) {
      const double g = x[2 + i], t = x[5 + i], n = x[8 + i];
      dx[2 + i] = t;
      dx[5 + i] = g + kappa * n;
      dx[8 + i] = -kappa * t;
    }
  };
  const auto states = detail::integrate_on_grid(x0, rhs, grid, ctrl, "frenet_oracle");
  FrenetPath path;
  path.s = grid;
  path.mu.reserve(states.size());
  path.frames.reserve(states.size());
  for (const auto& st : states) {
    path.mu.push_back(st[0]);
    Eigen::Matrix3d f;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) f(i, j) = st[2 + 3 * j + i];
    path.frames.push_back(f);
  }
  return path;
}

std::vector<MinkowskiVector> aligned_positions(const FrenetPath& path, const CurveSample& start) {
  const Eigen::Matrix3d f0 = frame_at(start);
  std::vector<MinkowskiVector> out;
  out.reserve(path.frames.size());
  for (const auto& f : path.frames) out.push_back(from_eigen(f0 * f.col(0)));
  return out;
}

Monodromy monodromy(const ModulusPoint& p, const StepControl& ctrl) {
  const auto start = generate_curve(p, std::vector<double>{0.0}, ctrl);
  const double omega = start.wavelength;
  const auto path = frenet_oracle(p, {0.0, omega}, ctrl);
  const Eigen::Matrix3d f0 = frame_at(start.samples.front());
  Monodromy m;
  m.matrix = f0 * path.frames.back() * f0.inverse();
  switch (start.kind) {
    case CurveKind::BL:
      m.kind = MonodromyClass::Parabolic;
      m.parameter = m.matrix(1, 0);
      break;
    case CurveKind::BS:
      m.kind = MonodromyClass::HyperbolicRotation;
      m.parameter = std::asinh(m.matrix(1, 0));
      break;
    case CurveKind::BT:
      m.kind = MonodromyClass::EllipticRotation;
      m.parameter = std::atan2(m.matrix(1, 2), m.matrix(1, 1));
      break;
  }
  return m;
}

double bl_theta_printed(double lambda) {
  if (!(lambda < -1)) throw DomainError("bl_theta_printed: needs lambda < -1");
  const double l2 = lambda * lambda;
  const double r = std::sqrt(l2 * l2 - 1);
  const double m = (l2 - r) / (l2 + r);
  const double pref =
      std::numbers::sqrt2 * (2 * l2 * l2 + 2 * l2 * std::sqrt(l2 - 1)) / std::pow(l2 + r, 1.5);
  return 2 * pref * (ellint::complete_E(m) - ellint::complete_K(m));
}

double bl_theta_closed_form(double lambda) {
  if (!(lambda < -1)) throw DomainError("bl_theta_closed_form: needs lambda < -1");
  const double l2 = lambda * lambda;
  const double m = 2 / (l2 + 1);
  return 2 * (l2 * ellint::complete_K(m) - (l2 + 1) * ellint::complete_E(m)) / std::sqrt(l2 + 1);
}

double bl_theta_quadrature(double lambda, double tol) {
  if (!(lambda < -1)) throw DomainError("bl_theta_quadrature: needs lambda < -1");
  const double e1 = -lambda + std::sqrt(lambda * lambda + 1);
  const double e2 = moduli::b0(lambda);
  // mu^4 + 4 lambda mu^3 + 4 lambda^2 mu^2 - 1 = (mu^2 + 2 lambda mu - 1)(mu^2 + 2 lambda mu + 1)
  const double e3 = -lambda - std::sqrt(lambda * lambda + 1);
  const double e4 = -lambda - std::sqrt(lambda * lambda - 1);
  auto f = [&](double mu, double lo, double hi) {
    return mu * (mu + 2 * lambda) / std::sqrt(hi * lo * (mu - e3) * (mu - e4));
  };
  return -2 * ellint::quad_oracle_gaps(f, e2, e1, tol).value;
}

}  // namespace curvegen
}  // namespace halfelastica
