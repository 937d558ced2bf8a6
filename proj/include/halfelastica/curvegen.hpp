#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "halfelastica/dynamics.hpp"
#include "halfelastica/moduli.hpp"

namespace halfelastica {

struct MinkowskiVector {
  double x1 = 0, x2 = 0, x3 = 0;
};

MinkowskiVector operator+(const MinkowskiVector& a, const MinkowskiVector& b);
MinkowskiVector operator-(const MinkowskiVector& a, const MinkowskiVector& b);
MinkowskiVector operator*(double k, const MinkowskiVector& a);

double minkowski_inner(const MinkowskiVector& a, const MinkowskiVector& b);
MinkowskiVector minkowski_cross(const MinkowskiVector& a, const MinkowskiVector& b);
// Euclidean norm of the coordinate vector, used for closure residuals.
double coordinate_norm(const MinkowskiVector& a);

Eigen::Vector3d to_eigen(const MinkowskiVector& a);
MinkowskiVector from_eigen(const Eigen::Vector3d& v);

enum class CurveKind { BL, BS, BT };
const char* curve_kind_name(CurveKind k);

struct CurveSample {
  double s, mu, mu_dot;
  MinkowskiVector gamma, tangent, acceleration;
  std::array<double, 2> poincare;
};

struct CurveSamples {
  ModulusPoint modulus;
  QuarticData roots;
  CurveKind kind;
  double wavelength;
  std::vector<CurveSample> samples;
  std::vector<double> theta;
};

enum class MonodromyClass { Parabolic, HyperbolicRotation, EllipticRotation };
const char* monodromy_class_name(MonodromyClass k);

struct Monodromy {
  Eigen::Matrix3d matrix;
  MonodromyClass kind;
  // t of HP(t), t of HR(t), or the rotation angle.
  double parameter;
};

struct FrenetPath {
  std::vector<double> s;
  std::vector<double> mu;
  // Frames (gamma, T, gamma x T) as columns, starting from the identity.
  std::vector<Eigen::Matrix3d> frames;
};

namespace curvegen {

CurveSamples bl_curve(const ModulusPoint& p, const std::vector<double>& grid,
                      const StepControl& ctrl = {});
CurveSamples bs_curve(const ModulusPoint& p, const std::vector<double>& grid,
                      const StepControl& ctrl = {});
CurveSamples bt_curve(const ModulusPoint& p, const std::vector<double>& grid,
                      const StepControl& ctrl = {});
// Dispatches on the region of p.
CurveSamples generate_curve(const ModulusPoint& p, const std::vector<double>& grid,
                            const StepControl& ctrl = {});
CurveSamples generate_curve(const ModulusPoint& p, double periods, int samples_per_period = 2048,
                            const StepControl& ctrl = {});

// Derivative of the angular function with respect to arclength at the phase
// point (mu, mu_dot), for the family the modulus belongs to.
double theta_rate(const ModulusPoint& p, double mu, double mu_dot);

std::vector<double> radial_function(const ModulusPoint& p, const std::vector<double>& grid,
                                    const StepControl& ctrl = {});
std::vector<double> angular_function(const ModulusPoint& p, const std::vector<double>& grid,
                                     const StepControl& ctrl = {});

// Inner and outer radii of the annulus containing a BT trajectory.
std::pair<double, double> annulus_radii(const ModulusPoint& p);

double upsilon_plus(double lambda, double e2);
double upsilon_star(double lambda);
// The e2 in (-lambda, b0(lambda)) where upsilon_plus returns to upsilon_star.
double upsilon_return_point(double lambda);

MinkowskiVector momentum(const MinkowskiVector& gamma, const MinkowskiVector& tangent, double mu,
                         double mu_dot, double lambda);

std::array<double, 2> to_poincare(const MinkowskiVector& x);
MinkowskiVector from_poincare(const std::array<double, 2>& z);

double bending_energy(const CurveSamples& curve, double lambda);

Eigen::Matrix3d parabolic_rotation(double t);
Eigen::Matrix3d hyperbolic_rotation(double t);
Eigen::Matrix3d minkowski_form();
Eigen::Matrix3d frame_at(const CurveSample& smp);

FrenetPath frenet_oracle(const ModulusPoint& p, const std::vector<double>& grid,
                         const StepControl& ctrl = {});
// Oracle positions mapped by the Lorentz transform that sends the identity
// frame to the closed-form frame at s = 0.
std::vector<MinkowskiVector> aligned_positions(const FrenetPath& path, const CurveSample& start);
Monodromy monodromy(const ModulusPoint& p, const StepControl& ctrl = {});

// Theta(omega) of a BL-curve: the published E - K expression, the
// corrected closed form, and direct quadrature.
double bl_theta_printed(double lambda);
double bl_theta_closed_form(double lambda);
double bl_theta_quadrature(double lambda, double tol = 1e-13);

}  // namespace curvegen
}  // namespace halfelastica
