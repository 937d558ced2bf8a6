#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "halfelastica/kernels.hpp"
#include "halfelastica/moduli.hpp"
#include "halfelastica/rational.hpp"

namespace halfelastica {

struct EllipticCoeffs {
  double g = 0, m = 0, m1 = 0, n1 = 0, n2 = 0, A = 0, B = 0, C = 0;
  // False on the exceptional locus, where n1 and B diverge; they are left at 0.
  bool valid_n1B = false;
};

struct StringRecord {
  Rational q;
  ModulusPoint modulus;
  double wavelength = 0;
  double length = 0;
  long long wave_number = 0;
  long long turning_number = 0;
  // Empty on the exceptional locus or when the fiber has no exceptional crossing.
  std::optional<long long> punctured_class;
  long long isotopy_count = 0;
  double period_value = 0;
};

struct FamilyInvariants {
  long long wave_number = 0, turning_number = 0;
  std::optional<long long> punctured_class;
  long long j = 0;
  long long isotopy_count = 0;
  double r_q = 0;
  double r_q_printed = 0;  // 1 / (e* + sqrt(e*^4 - 1)), does not match the fiber limit
  double limit_wavelength = 0;  // limit of omega at the fiber endpoint
};

struct FiberTrace {
  std::vector<ModulusPoint> points;  // ordered by e2, includes the exceptional crossing
  ModulusPoint exceptional;          // region Outside if the fiber misses the locus
  std::pair<double, double> start;   // (-1, 1)
  std::pair<double, double> end;     // fiber_endpoint(q)
};

struct StringClosure {
  double position = 0;  // max |gamma(n omega) - gamma(0)|, coordinates
  double frame = 0;     // max entry of F(n omega) - F(0)
  double symmetry = 0;  // Hausdorff distance of the disk trajectory to its 2 pi / n rotation
};

namespace periodmap {

inline constexpr double kScanInset = 1e-7;
inline constexpr int kScanPoints = 512;

// Timelike points only: e2 > 0, P < 0 and e2^2 + 2 lambda e2 + 1 > 0.
bool in_timelike(double lambda, double e2);

// (a(lambda), eta_plus(lambda)), the e2-range of the timelike region.
std::pair<double, double> period_domain(double lambda);

EllipticCoeffs elliptic_coeffs(const ModulusPoint& p);

// Closed forms of the normalised angular increment off and on the locus.
double period_integral(const ModulusPoint& p);
double exceptional_integral(double lambda);

double period_map(const ModulusPoint& p);
double period_map_at(double lambda, double e2);
// The same value from direct quadrature of the angular increment.
double period_map_oracle(const ModulusPoint& p, double tol = 1e-13);

// (2 sqrt|c| / pi) B Pi(n1, m).
double jump_term(const ModulusPoint& p);

// Both sides of the Q identity and of the B + C identity.
std::pair<double, double> q_identity(const ModulusPoint& p);
std::pair<double, double> b_plus_c_identity(const ModulusPoint& p);

// sqrt|c| R, with R = sum over (n, coeff) in {(n1, B), (n2, C)} of
// coeff sqrt(-n) atan(sqrt(-n)) / (1 - n).
double scaled_R(const ModulusPoint& p);

// Open interval of characteristic numbers attained at lambda.
std::pair<double, double> j_interval(double lambda);

// Every solution of P_lambda(e2) = q found by the bracketing scan.
std::vector<StringRecord> find_strings(double lambda, const Rational& q, Exec exec = Exec::Parallel);
StringRecord find_string(double lambda, const Rational& q, Exec exec = Exec::Parallel);

StringClosure string_closure(const StringRecord& s, int samples_per_period = 1024);

// (lambda*, e*) on the upper boundary where the fiber of q ends.
std::pair<double, double> fiber_endpoint(double q);
// Point where the fiber of q meets the exceptional locus.
ModulusPoint exceptional_crossing(double q);
FiberTrace trace_fiber(const Rational& q, int steps = 128, Exec exec = Exec::Parallel);

FamilyInvariants family_invariants(const Rational& q, const ModulusPoint& p, std::optional<double> e_hat);
FamilyInvariants family_invariants(const Rational& q, const ModulusPoint& p);
long long j_count(const Rational& q);

// Largest centred-difference slope of P_lambda on an interior grid that
// accumulates at eta_plus; positive iff P_lambda has an interior minimum.
double interior_slope_max(double lambda, Exec exec = Exec::Serial);
// Bisection on the sign of interior_slope_max.
double locate_lambda_star(double lo = -0.999, double hi = -0.97, double tol = 1e-5,
                          Exec exec = Exec::Parallel);

}  // namespace periodmap
}  // namespace halfelastica
