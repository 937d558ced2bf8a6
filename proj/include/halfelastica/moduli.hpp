#pragma once

#include <string>
#include <utility>
#include <vector>

namespace halfelastica {

enum class Region { S, L, Tminus, E, Tplus, BoundaryMinus, BoundaryPlus, Outside };

const char* region_name(Region r);
// True for the open moduli space: S, L, Tminus, E, Tplus.
bool in_moduli_space(Region r);
bool is_timelike(Region r);

struct ModulusPoint {
  double lambda;
  double e2;
  Region region;
};

// Roots e1 > e2 > e3 > 0 > e4 of Q_{lambda,c} and the causal constant c.
struct QuarticData {
  double e1, e2, e3, e4;
  double c;
};

struct LocusFunctions {
  double eta_minus, eta_plus;
  double a_lower;
  double b0;      // NaN for lambda > -1
  double c_exc;   // NaN outside the exceptional range
  double chi;
};

namespace moduli {

// lambda at which P_lambda acquires its double root, -2/27^(1/4).
double lambda_equilibrium();
// Upper end of the exceptional locus, -phi^(5/4)/2.
double lambda_exceptional();

inline constexpr double kLocusTol = 1e-9;

double P_value(double lambda, double x);                 // x^4 + 2 lambda x^3 + 1
double Q_value(double lambda, double c, double x);       // x^4 + 4 lambda x^3 + 4(lambda^2 - c) x^2 - 1
double causal_constant(double lambda, double e2);

// Real roots of a polynomial (coefficients, highest degree first) via the
// companion matrix; imaginary parts below imag_tol are accepted.
std::vector<double> real_polynomial_roots(const std::vector<double>& coeffs,
                                          double imag_tol = 1e-7);

std::pair<double, double> eta_pm(double lambda);
double a_lower(double lambda);
double b0(double lambda);
double chi(double lambda);
double exceptional_c(double lambda);
LocusFunctions locus_functions(double lambda);

// e1 as the root above e2 of e2^2 x^3 + (e2^3 + 4 e2^2 lambda) x^2 + x + e2.
double e1_companion(double lambda, double e2);
double cardano_e1(double lambda, double e2);
// The published radical expression, kept for comparison; it does not return e1.
double cardano_e1_printed(double lambda, double e2);

QuarticData roots_from_modulus(const ModulusPoint& p);
ModulusPoint classify_region(double lambda, double e2);

double reconstruct_lambda(double e1, double e2);
double reconstruct_c(double e1, double e2);

// Curvatures kappa of closed constant-curvature critical curves (circles).
std::vector<double> closed_circle_curvatures(double lambda);

}  // namespace moduli
}  // namespace halfelastica
