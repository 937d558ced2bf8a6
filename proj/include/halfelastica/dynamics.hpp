#pragma once

#include <array>
#include <functional>
#include <vector>

#include "halfelastica/moduli.hpp"

namespace halfelastica {

enum class OrbitKind {
  StableEquilibrium,
  UnstableEquilibrium,
  Closed,
  NonClosedFirstKind,
  NonClosedSecondKind,
  ExceptionalFirstKind,
  ExceptionalSecondKind,
};

const char* orbit_kind_name(OrbitKind k);

struct OrbitType {
  OrbitKind kind;
  double level;  // energy level c of the initial condition
};

struct MuSample {
  double s, mu, mu_dot;
};

struct MuSolution {
  ModulusPoint modulus;
  QuarticData roots;
  std::vector<MuSample> samples;
  double wavelength;
  double max_residual;  // max |mu_dot^2 + mu^2 Q(mu)| over the samples
};

// Sample of the curvature ODE augmented by an accumulated phase.
struct PhaseSample {
  double s, mu, mu_dot, theta;
};

struct StepControl {
  double abs_tol = 1e-15;
  double rel_tol = 1e-15;
  double residual_limit = 1e-8;
};

namespace dynamics {

std::array<double, 2> phase_field(double lambda, double x, double y);
// Level c such that (x, y) lies on y^2 + x^2 Q_{lambda,c}(x) = 0.
double energy_level(double lambda, double x, double y);
double conservation_residual(double lambda, double c, double mu, double mu_dot);

// Energy level of the saddle (eta_-, 0) and the root of the corresponding
// quartic beyond eta_+.
double separatrix_level(double lambda);
double separatrix_root(double lambda);

OrbitType classify_orbit(double lambda, double x0, double y0);

// s grid k * omega / samples_per_period for k = 0 .. round(samples_per_period * periods).
std::vector<double> period_grid(double omega, int samples_per_period, double periods);

// Integrates mu'' = 2 mu'^2/mu - mu - 2 lambda mu^4 - mu^5 from (e2, 0) together
// with theta' = theta_rate(mu, mu_dot) on an arbitrary sorted grid (negative s
// are reached by integrating backwards from 0).
std::vector<PhaseSample> integrate_phase(double lambda, double e2, const std::vector<double>& grid,
                                         const std::function<double(double, double)>& theta_rate,
                                         const StepControl& ctrl = {});

MuSolution solve_mu(const ModulusPoint& p, double n_periods, int samples_per_period = 2048,
                    const StepControl& ctrl = {});
MuSolution solve_mu_on_grid(const ModulusPoint& p, const std::vector<double>& grid,
                            const StepControl& ctrl = {});

double wavelength(const ModulusPoint& p);
double wavelength(const QuarticData& q);
double wavelength_quadrature(const ModulusPoint& p, double tol = 1e-12);
// Period of the linearised flow at the centre (eta_+, 0).
double center_period(double lambda);

double h_inverse(const ModulusPoint& p, double mu);

std::vector<std::array<double, 2>> signature(const ModulusPoint& p, int n);

}  // namespace dynamics
}  // namespace halfelastica
