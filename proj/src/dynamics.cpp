#include "halfelastica/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "halfelastica/ellint.hpp"
#include "halfelastica/errors.hpp"
#include "detail/integrate.hpp"

namespace halfelastica {

const char* orbit_kind_name(OrbitKind k) {
  switch (k) {
    case OrbitKind::StableEquilibrium: return "StableEquilibrium";
    case OrbitKind::UnstableEquilibrium: return "UnstableEquilibrium";
    case OrbitKind::Closed: return "Closed";
    case OrbitKind::NonClosedFirstKind: return "NonClosedFirstKind";
    case OrbitKind::NonClosedSecondKind: return "NonClosedSecondKind";
    case OrbitKind::ExceptionalFirstKind: return "ExceptionalFirstKind";
    case OrbitKind::ExceptionalSecondKind: return "ExceptionalSecondKind";
  }
  return "Closed";
}

namespace dynamics {

namespace {

using State = std::array<double, 3>;

constexpr double kLevelTol = 1e-10;

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::array<double, 2> phase_field(double lambda, double x, double y) {
  if (!(x > 0)) throw DomainError("phase_field: need x > 0");
  const double x4 = x * x * x * x;
  return {y, 2 * (y * y / x - x / 2 - lambda * x4 - x4 * x / 2)};
}

double energy_level(double lambda, double x, double y) {
  if (!(x > 0)) throw DomainError("energy_level: need x > 0");
  const double x2 = x * x;
  return (y * y / x2 + x2 * (x2 + 4 * lambda * x + 4 * lambda * lambda) - 1) / (4 * x2);
}

double conservation_residual(double lambda, double c, double mu, double mu_dot) {
  return mu_dot * mu_dot + mu * mu * moduli::Q_value(lambda, c, mu);
}

double separatrix_level(double lambda) {
  return energy_level(lambda, moduli::eta_pm(lambda).first, 0);
}

double separatrix_root(double lambda) {
  const double c = separatrix_level(lambda);
  const double ep = moduli::eta_pm(lambda).second;
  const auto roots =
      moduli::real_polynomial_roots({1, 4 * lambda, 4 * (lambda * lambda - c), 0, -1});
  double x = roots.empty() ? ep : roots.back();
  if (!(x > ep)) throw DomainError("separatrix_root: no root beyond eta_+");
  for (int it = 0; it < 4; ++it) {
    const double f = moduli::Q_value(lambda, c, x);
    const double df = x * (4 * x * x + 12 * lambda * x + 8 * (lambda * lambda - c));
    x -= f / df;
  }
  return x;
}

OrbitType classify_orbit(double lambda, double x0, double y0) {
  const double level = energy_level(lambda, x0, y0);
  if (!(lambda < moduli::lambda_equilibrium())) return {OrbitKind::NonClosedFirstKind, level};
  const auto [em, ep] = moduli::eta_pm(lambda);
  const double c_saddle = energy_level(lambda, em, 0);
  const double c_center = energy_level(lambda, ep, 0);
  if (x0 > em && std::abs(level - c_center) <= kLevelTol) return {OrbitKind::StableEquilibrium, level};
  if (std::abs(level - c_saddle) <= kLevelTol) {
    if (std::hypot(x0 - em, y0) <= 1e-6) return {OrbitKind::UnstableEquilibrium, level};
    return {x0 > em ? OrbitKind::ExceptionalFirstKind : OrbitKind::ExceptionalSecondKind, level};
  }
  if (level > c_saddle) return {OrbitKind::NonClosedFirstKind, level};
  return {x0 > em ? OrbitKind::Closed : OrbitKind::NonClosedSecondKind, level};
}

std::vector<double> period_grid(double omega, int samples_per_period, double periods) {
  if (samples_per_period < 1) throw DomainError("period_grid: need at least one sample per period");
  const long n = std::lround(samples_per_period * periods);
  std::vector<double> grid(n + 1);
  for (long k = 0; k <= n; ++k) grid[k] = omega * static_cast<double>(k) / samples_per_period;
  return grid;
}

std::vector<PhaseSample> integrate_phase(double lambda, double e2, const std::vector<double>& grid,
                                         const std::function<double(double, double)>& theta_rate,
                                         const StepControl& ctrl) {
  auto rhs = [&](const State& x, State& dx) {
    const double mu = x[0], y = x[1];
    const double mu4 = mu * mu * mu * mu;
    dx[0] = y;
    dx[1] = 2 * y * y / mu - mu - 2 * lambda * mu4 - mu4 * mu;
    dx[2] = theta_rate ? theta_rate(mu, y) : 0.0;
  };
  const auto states = detail::integrate_on_grid(State{e2, 0.0, 0.0}, rhs, grid, ctrl, "integrate_phase");
  std::vector<PhaseSample> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = {grid[i], states[i][0], states[i][1], states[i][2]};
  return out;
}

MuSolution solve_mu_on_grid(const ModulusPoint& p, const std::vector<double>& grid,
                            const StepControl& ctrl) {
  MuSolution sol;
  sol.modulus = p;
  sol.roots = moduli::roots_from_modulus(p);
  const double ep = moduli::eta_pm(p.lambda).second;
  sol.samples.reserve(grid.size());
  if (std::abs(p.e2 - ep) <= 1e-12) {
    sol.wavelength = center_period(p.lambda);
    for (double s : grid) sol.samples.push_back({s, p.e2, 0.0});
  } else {
    sol.wavelength = wavelength(sol.roots);
    for (const auto& ps : integrate_phase(p.lambda, p.e2, grid, nullptr, ctrl))
      sol.samples.push_back({ps.s, ps.mu, ps.mu_dot});
  }
  sol.max_residual = 0;
  for (const auto& smp : sol.samples)
    sol.max_residual = std::max(
        sol.max_residual, std::abs(conservation_residual(p.lambda, sol.roots.c, smp.mu, smp.mu_dot)));
  if (!(sol.max_residual <= ctrl.residual_limit))
    throw ConvergenceError("solve_mu: conservation residual " + format_sci(sol.max_residual) +
                               " above limit",
                           sol.max_residual);
  return sol;
}

MuSolution solve_mu(const ModulusPoint& p, double n_periods, int samples_per_period,
                    const StepControl& ctrl) {
  const auto q = moduli::roots_from_modulus(p);
  const double ep = moduli::eta_pm(p.lambda).second;
  const double omega = std::abs(p.e2 - ep) <= 1e-12 ? center_period(p.lambda) : wavelength(q);
  return solve_mu_on_grid(p, period_grid(omega, samples_per_period, n_periods), ctrl);
}

double wavelength(const QuarticData& q) {
  const double e1 = q.e1, e2 = q.e2, e3 = q.e3, e4 = q.e4;
  const double a = (e2 - e1) / (e2 - e4);
  const double m1 = (e2 - e3) * (e1 - e4) / ((e1 - e3) * (e2 - e4));
  const double n = e4 * a / e1;
  const double g = 2 / std::sqrt((e1 - e3) * (e2 - e4));
  return 2 * g / e1 *
         (a / n * ellint::complete_K_comp(m1) - (a - n) / n * ellint::complete_Pi_comp(n, m1));
}

double wavelength(const ModulusPoint& p) { return wavelength(moduli::roots_from_modulus(p)); }

double wavelength_quadrature(const ModulusPoint& p, double tol) {
  const auto q = moduli::roots_from_modulus(p);
  auto f = [&](double x, double lo, double hi) {
    return 1 / (x * std::sqrt(hi * lo * (x - q.e3) * (x - q.e4)));
  };
  return 2 * ellint::quad_oracle_gaps(f, q.e2, q.e1, tol).value;
}

double center_period(double lambda) {
  const double ep = moduli::eta_pm(lambda).second;
  const double ep4 = ep * ep * ep * ep;
  if (!(ep4 > 3)) throw DomainError("center_period: degenerate centre");
  return 2 * std::numbers::pi / std::sqrt(ep4 - 3);
}

double h_inverse(const ModulusPoint& p, double mu) {
  const auto q = moduli::roots_from_modulus(p);
  const double e1 = q.e1, e2 = q.e2, e3 = q.e3, e4 = q.e4;
  if (!(mu >= e2 && mu <= e1))
    throw DomainError("h_inverse: mu must lie in [e2, e1]");
  const double a = (e2 - e1) / (e2 - e4);
  const double m1 = (e2 - e3) * (e1 - e4) / ((e1 - e3) * (e2 - e4));
  const double m = 1 - m1;
  const double n = e4 * a / e1;
  const double g = 2 / std::sqrt((e1 - e3) * (e2 - e4));
  const double omega = wavelength(q);
  const double x = std::min(1.0, std::sqrt((e2 - e4) * (e1 - mu) / ((e1 - e2) * (mu - e4))));
  const double u = ellint::inverse_sn(x, m);
  const double phi = ellint::jacobi_am(u, m);
  const double pi_inc = ellint::incomplete_Pi(n, std::min(phi, std::numbers::pi / 2), m);
  return omega / 2 - g / e1 * (a / n * u - (a - n) / n * pi_inc);
}

std::vector<std::array<double, 2>> signature(const ModulusPoint& p, int n) {
  if (n < 2) throw DomainError("signature: need at least two samples");
  const auto sol = solve_mu(p, 1.0, n);
  std::vector<std::array<double, 2>> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) out.push_back({sol.samples[k].mu, sol.samples[k].mu_dot});
  return out;
}

}  // namespace dynamics
}  // namespace halfelastica
