#pragma once

#include <functional>

namespace halfelastica::ellint {

// Carlson symmetric integrals.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
double carlson_rj(double x, double y, double z, double p);
double carlson_rc(double x, double y);

// Complete integrals in the parameter convention m = k^2.
double complete_K(double m);
double complete_E(double m);
double complete_Pi(double n, double m);

// The same integrals addressed by the complementary parameter m1 = 1 - m,
// which keeps full relative precision when m is close to 1.
double complete_K_comp(double m1);
double complete_E_comp(double m1);
double complete_Pi_comp(double n, double m1);

// Incomplete integrals, amplitude phi in [0, pi/2].
double incomplete_F(double phi, double m);
double incomplete_E(double phi, double m);
double incomplete_Pi(double n, double phi, double m);

double jacobi_am(double u, double m);
double jacobi_sn(double u, double m);
// Returns u in [0, K(m)] with sn(u, m) = x.
double inverse_sn(double x, double m);

// Below this distance from m = 1 the complete integrals use their
// logarithmic expansions.
inline constexpr double kNearOneThreshold = 1e-12;

struct QuadResult {
  double value;
  double error;
};

// Adaptive Gauss-Kronrod quadrature on (a, b) after the substitution
// x = a + (b - a) sin^2 t, which absorbs inverse square-root endpoint
// singularities. Throws ConvergenceError if the error estimate exceeds tol.
// Where a singular endpoint is not at 0, x cannot approach it closer than one
// ulp, which limits accuracy to about sqrt(ulp); quad_oracle_gaps avoids this.
QuadResult quad_oracle(const std::function<double(double)>& f, double a, double b,
                       double tol);

// Same, but the integrand also receives the exact gaps x - a and b - x, so
// singular factors can be formed without cancellation.
QuadResult quad_oracle_gaps(const std::function<double(double, double, double)>& f,
                            double a, double b, double tol);

}  // namespace halfelastica::ellint
