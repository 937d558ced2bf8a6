#include "halfelastica/periodmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "halfelastica/curvegen.hpp"
#include "halfelastica/dynamics.hpp"
#include "halfelastica/ellint.hpp"
#include "halfelastica/errors.hpp"

namespace halfelastica::periodmap {
namespace {

constexpr double kPi = std::numbers::pi;

struct Setup {
  double lambda;
  QuarticData r;
  double s;  // sqrt|c|
  double d;  // e1 + 2 lambda, vanishes on the locus
  Region region;
};

std::string point_str(double lambda, double e2) {
  std::ostringstream os;
  os.precision(12);
  os << "(" << lambda << ", " << e2 << ")";
  return os.str();
}

Setup setup(double lambda, double e2) {
  if (!in_timelike(lambda, e2))
    throw RegionError("period map: " + point_str(lambda, e2) + " is not in the timelike region");
  Setup st;
  st.lambda = lambda;
  st.r = moduli::roots_from_modulus({lambda, e2, Region::Tplus});
  st.s = std::sqrt(-st.r.c);
  st.d = st.r.e1 + 2 * lambda;
  st.region = Region::Tplus;
  if (lambda < moduli::lambda_exceptional()) {
    const double c = moduli::exceptional_c(lambda);
    if (std::abs(e2 - c) <= moduli::kLocusTol)
      st.region = Region::E;
    else if (e2 < c)
      st.region = Region::Tminus;
  }
  return st;
}

EllipticCoeffs coeffs(const Setup& st) {
  const auto& [e1, e2, e3, e4, c] = st.r;
  const double s = st.s, l = st.lambda, d = st.d;
  EllipticCoeffs k;
  const double den = (e1 - e3) * (e2 - e4);
  k.g = 2 / std::sqrt(den);
  k.m = (e1 - e2) * (e3 - e4) / den;
  k.m1 = (e2 - e3) * (e1 - e4) / den;
  const double p1 = 1 + 2 * s * e1;
  k.n2 = (1 + 2 * s * e4) * (e2 - e1) / (p1 * (e2 - e4));
  k.A = -k.g * e4 * (e4 + 2 * l) / (1 + 4 * c * e4 * e4);
  k.C = k.g * (1 - 4 * s * l) * (e1 - e4) / (4 * s * (1 + 2 * s * e4) * p1);
  k.valid_n1B = st.region != Region::E;
  if (k.valid_n1B) {
    // 1 - 2 s e1 = e1^2 d^2 / (1 + 2 s e1) and 1 + 4 s lambda = d (e1^2 d + 4c(2 lambda - e1)) / (1 - 4 s lambda)
    const double e1d2 = e1 * e1 * d * d;
    k.n1 = (1 - 2 * s * e4) * (e2 - e1) * p1 / (e1d2 * (e2 - e4));
    k.B = -k.g * (e1 * e1 * d + 4 * c * (2 * l - e1)) * (e1 - e4) * p1 /
          (4 * s * (1 - 4 * l * s) * (1 - 2 * s * e4) * e1 * e1 * d);
  }
  return k;
}

double general_value(const Setup& st, const EllipticCoeffs& k) {
  return 2 * st.s / kPi *
         (k.A * ellint::complete_K_comp(k.m1) + k.B * ellint::complete_Pi_comp(k.n1, k.m1) +
          k.C * ellint::complete_Pi_comp(k.n2, k.m1));
}

double exceptional_value(const Setup& st, const EllipticCoeffs& k) {
  return 2 * st.s / kPi *
         (k.A * ellint::complete_K_comp(k.m1) + k.C * ellint::complete_Pi_comp(k.n2, k.m1));
}

double value_at(const Setup& st) {
  const auto k = coeffs(st);
  if (st.region == Region::E) return exceptional_value(st, k) + 0.5;
  return general_value(st, k) + (st.region == Region::Tminus ? 1.0 : 0.0);
}

double toms748_root(const std::function<double(double)>& f, double lo, double hi, double flo,
                    double fhi) {
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (a + b);
}

// All roots of f on the sorted grid, found from sign changes of the sampled values.
std::vector<double> bracketed_roots(const std::function<double(double)>& f,
                                    const std::vector<double>& grid, const std::vector<double>& vals) {
  std::vector<double> roots;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (vals[k] == 0) {
      roots.push_back(grid[k]);
      continue;
    }
    if (k + 1 < grid.size() && vals[k + 1] != 0 && std::signbit(vals[k]) != std::signbit(vals[k + 1]))
      roots.push_back(toms748_root(f, grid[k], grid[k + 1], vals[k], vals[k + 1]));
  }
  return roots;
}

std::vector<double> sample(const std::function<double(double)>& f, const std::vector<double>& grid,
                           Exec exec) {
  std::vector<double> vals(grid.size());
  kernels::for_each_index(grid.size(), exec, [&](std::size_t i) { vals[i] = f(grid[i]); });
  return vals;
}

}  // namespace

bool in_timelike(double lambda, double e2) {
  return std::isfinite(lambda) && e2 > 0 && moduli::P_value(lambda, e2) < 0 &&
         e2 * e2 + 2 * lambda * e2 + 1 > 0;
}

std::pair<double, double> period_domain(double lambda) {
  if (!(lambda < moduli::lambda_equilibrium()))
    throw DomainError("period map: need lambda < -2/27^(1/4)");
  return {moduli::a_lower(lambda), moduli::eta_pm(lambda).second};
}

EllipticCoeffs elliptic_coeffs(const ModulusPoint& p) { return coeffs(setup(p.lambda, p.e2)); }

double period_integral(const ModulusPoint& p) {
  const auto st = setup(p.lambda, p.e2);
  if (st.region == Region::E)
    throw RegionError("period_integral: " + point_str(p.lambda, p.e2) + " lies on the exceptional locus");
  return general_value(st, coeffs(st));
}

double exceptional_integral(double lambda) {
  const auto st = setup(lambda, moduli::exceptional_c(lambda));
  return exceptional_value(st, coeffs(st));
}

double period_map(const ModulusPoint& p) { return value_at(setup(p.lambda, p.e2)); }

double period_map_at(double lambda, double e2) { return value_at(setup(lambda, e2)); }

double period_map_oracle(const ModulusPoint& p, double tol) {
  const auto st = setup(p.lambda, p.e2);
  const auto& [e1, e2, e3, e4, c] = st.r;
  const double l = st.lambda, s = st.s, d = st.d;
  auto root = [&](double x, double lo, double hi) { return std::sqrt(hi * lo * (x - e3) * (x - e4)); };
  if (st.region == Region::E) {
    const auto q = ellint::quad_oracle_gaps(
        [&](double x, double lo, double hi) { return x / ((x - 2 * l) * root(x, lo, hi)); }, e2, e1, tol);
    return 8 * s * l * l / kPi * q.value + 0.5;
  }
  // 1 + 4c x^2 = e1^2 d^2 - 4c (e1 - x)(e1 + x) and x + 2 lambda = d - (e1 - x)
  auto f = [&](double x, double lo, double hi) {
    return x * (d - hi) / ((e1 * e1 * d * d - 4 * c * hi * (e1 + x)) * root(x, lo, hi));
  };
  // Near the locus the integrand peaks within e1 d^2 / (8|c|) of e1, so the
  // range is cut geometrically in e1 - x around that scale.
  const double width = e1 - e2;
  const double scale = e1 * d * d / (-8 * c);
  std::vector<double> cuts{0.0};  // values of e1 - x
  for (double h = scale; h < width / 4; h *= 8) cuts.push_back(h);
  cuts.push_back(width);
  double total = 0;
  // Integrate in h = e1 - x so that piece boundaries are exact.
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const bool last = k + 2 == cuts.size();
    total += ellint::quad_oracle_gaps(
                 [&](double h, double, double to_far) { return f(e1 - h, last ? to_far : width - h, h); },
                 cuts[k], cuts[k + 1], tol)
                 .value;
  }
  return -2 * s / kPi * total + (st.region == Region::Tminus ? 1.0 : 0.0);
}

double jump_term(const ModulusPoint& p) {
  const auto st = setup(p.lambda, p.e2);
  const auto k = coeffs(st);
  if (!k.valid_n1B) throw RegionError("jump_term: undefined on the exceptional locus");
  return 2 * st.s / kPi * k.B * ellint::complete_Pi_comp(k.n1, k.m1);
}

std::pair<double, double> q_identity(const ModulusPoint& p) {
  const auto st = setup(p.lambda, p.e2);
  const auto k = coeffs(st);
  if (!k.valid_n1B) throw RegionError("q_identity: undefined on the exceptional locus");
  const double e2 = st.r.e2, c = st.r.c;
  return {k.A + k.B / (1 - k.n1) + k.C / (1 - k.n2),
          -k.g * e2 * (e2 + 2 * st.lambda) / (1 + 4 * c * e2 * e2)};
}

std::pair<double, double> b_plus_c_identity(const ModulusPoint& p) {
  const auto st = setup(p.lambda, p.e2);
  const auto k = coeffs(st);
  if (!k.valid_n1B) throw RegionError("b_plus_c_identity: undefined on the exceptional locus");
  const auto& [e1, e2, e3, e4, c] = st.r;
  // e4 (8 c lambda e1 - 1) - e1 - 2 lambda = d (e4 (4 c e1 - e1^2 d) - 1), using 1 + 4 c e1^2 = e1^2 d^2
  const double d = st.d;
  const double rhs = k.g * (e1 - e4) * (e4 * (4 * c * e1 - e1 * e1 * d) - 1) / (e1 * e1 * d * (1 + 4 * c * e4 * e4));
  return {k.B + k.C, rhs};
}

double scaled_R(const ModulusPoint& p) {
  const auto st = setup(p.lambda, p.e2);
  const auto k = coeffs(st);
  if (!k.valid_n1B) throw RegionError("scaled_R: undefined on the exceptional locus");
  auto term = [](double n, double coef) {
    const double r = std::sqrt(-n);
    return coef * r * std::atan(r) / (1 - n);
  };
  return st.s * (term(k.n1, k.B) + term(k.n2, k.C));
}

std::pair<double, double> j_interval(double lambda) {
  if (!(lambda < moduli::lambda_equilibrium()))
    throw DomainError("j_interval: need lambda < -2/27^(1/4)");
  const double x = moduli::chi(lambda);
  if (lambda <= -1) return {1.0, x};
  return {x, std::numeric_limits<double>::infinity()};
}

long long j_count(const Rational& q) {
  const long long n = q.den;
  return (n + n % 2) / 2 - (n == 1 ? 1 : 0);
}

FamilyInvariants family_invariants(const Rational& q, const ModulusPoint& p, std::optional<double> e_hat) {
  FamilyInvariants f;
  f.wave_number = q.den;
  f.turning_number = q.num;
  if (e_hat && p.region != Region::E) f.punctured_class = p.e2 < *e_hat ? q.num - q.den : q.num;
  f.j = j_count(q);
  f.isotopy_count = 2 * f.j + 1;
  if (q.value() > 1) {
    const double e_star = fiber_endpoint(q.value()).second;
    const double x = std::pow(e_star, 4);
    f.r_q = e_star * e_star - std::sqrt(x - 1);
    f.r_q_printed = 1 / (e_star + std::sqrt(x - 1));
    f.limit_wavelength = 4 * q.value() * kPi * f.r_q / (1 - f.r_q * f.r_q);
  }
  return f;
}

FamilyInvariants family_invariants(const Rational& q, const ModulusPoint& p) {
  std::optional<double> e_hat;
  try {
    e_hat = exceptional_crossing(q.value()).e2;
  } catch (const NoRootError&) {
  } catch (const DomainError&) {
  }
  return family_invariants(q, p, e_hat);
}

std::vector<StringRecord> find_strings(double lambda, const Rational& q, Exec exec) {
  const auto [a, b] = period_domain(lambda);
  const double qv = q.value();
  const auto J = j_interval(lambda);
  if (!(qv > J.first && qv < J.second)) {
    std::ostringstream os;
    os.precision(10);
    os << "q = " << q.str() << " lies outside J_lambda = (" << J.first << ", " << J.second
       << ") at lambda = " << lambda;
    throw OutOfRangeError(os.str());
  }
  const auto grid = kernels::interior_grid(a, b, kScanPoints, kScanInset);
  const std::function<double(double)> f = [&](double e2) { return period_map_at(lambda, e2) - qv; };
  const auto roots = bracketed_roots(f, grid, sample(f, grid, exec));
  if (roots.empty())
    throw NoRootError("find_string: no sign change of P - " + q.str() + " on the 512-point scan at lambda = " +
                      std::to_string(lambda));
  std::optional<double> e_hat;
  try {
    e_hat = exceptional_crossing(qv).e2;
  } catch (const NoRootError&) {
  } catch (const DomainError&) {
  }
  std::vector<StringRecord> out;
  for (double e2 : roots) {
    StringRecord r;
    r.q = q;
    r.modulus = moduli::classify_region(lambda, e2);
    if (!is_timelike(r.modulus.region)) r.modulus.region = Region::Tplus;
    r.wavelength = dynamics::wavelength(moduli::roots_from_modulus(r.modulus));
    r.wave_number = q.den;
    r.turning_number = q.num;
    r.length = static_cast<double>(q.den) * r.wavelength;
    const auto inv = family_invariants(q, r.modulus, e_hat);
    r.punctured_class = inv.punctured_class;
    r.isotopy_count = inv.isotopy_count;
    r.period_value = period_map_at(lambda, e2);
    out.push_back(r);
  }
  return out;
}

StringRecord find_string(double lambda, const Rational& q, Exec exec) {
  return find_strings(lambda, q, exec).front();
}

StringClosure string_closure(const StringRecord& rec, int samples_per_period) {
  const auto grid =
      dynamics::period_grid(rec.wavelength, samples_per_period, static_cast<double>(rec.wave_number));
  const auto curve = curvegen::bt_curve(rec.modulus, grid);
  const auto& smp = curve.samples;
  StringClosure out;
  out.position = coordinate_norm(smp.back().gamma - smp.front().gamma);
  out.frame = (curvegen::frame_at(smp.back()) - curvegen::frame_at(smp.front())).cwiseAbs().maxCoeff();
  const std::size_t count = smp.size() - 1;
  const double ang = 2 * kPi / static_cast<double>(rec.wave_number);
  std::vector<double> worst(count, 0.0);
  kernels::for_each_index(count, Exec::Parallel, [&](std::size_t i) {
    double w = 0;
    for (double sign : {1.0, -1.0}) {
      const double cs = std::cos(sign * ang), sn = std::sin(sign * ang);
      const auto& z = smp[i].poincare;
      const double u = cs * z[0] - sn * z[1], v = sn * z[0] + cs * z[1];
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < count; ++j)
        best = std::min(best, std::hypot(u - smp[j].poincare[0], v - smp[j].poincare[1]));
      w = std::max(w, best);
    }
    worst[i] = w;
  });
  out.symmetry = *std::max_element(worst.begin(), worst.end());
  return out;
}

std::pair<double, double> fiber_endpoint(double q) {
  if (!(q > 1)) throw DomainError("fiber_endpoint: need q > 1");
  const double x = (3 * q * q - 1) / (q * q - 1);
  const double e = std::pow(x, 0.25);
  return {-(1 + x) / (2 * e * e * e), e};
}

ModulusPoint exceptional_crossing(double q) {
  const double hi = moduli::lambda_exceptional() - 1e-7;
  std::vector<double> grid(256);
  for (std::size_t k = 0; k < grid.size(); ++k)
    grid[k] = hi - (hi + 4.0) * static_cast<double>(k) / static_cast<double>(grid.size() - 1);
  std::reverse(grid.begin(), grid.end());
  const std::function<double(double)> f = [&](double l) { return exceptional_integral(l) + 0.5 - q; };
  const auto roots = bracketed_roots(f, grid, sample(f, grid, Exec::Serial));
  if (roots.empty()) throw NoRootError("exceptional_crossing: the exceptional locus misses the fiber");
  const double l = roots.back();
  return {l, moduli::exceptional_c(l), Region::E};
}

FiberTrace trace_fiber(const Rational& q, int steps, Exec exec) {
  if (steps < 2) throw std::invalid_argument("trace_fiber: need at least two steps");
  const double qv = q.value();
  FiberTrace tr;
  tr.start = {-1.0, 1.0};
  tr.end = fiber_endpoint(qv);
  tr.exceptional = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                    Region::Outside};
  try {
    tr.exceptional = exceptional_crossing(qv);
  } catch (const NoRootError&) {
  }
  const double e_star = tr.end.second;
  std::vector<double> levels(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) levels[static_cast<std::size_t>(k)] = 1 + (e_star - 1) * (k + 1) / (steps + 1);

  std::vector<std::vector<double>> candidates(levels.size());
  kernels::for_each_index(levels.size(), exec, [&](std::size_t i) {
    const double e2 = levels[i];
    const double lo = -(e2 * e2 + 1) / (2 * e2), hi = -(1 + std::pow(e2, 4)) / (2 * std::pow(e2, 3));
    const auto grid = kernels::interior_grid(lo, hi, 64, kScanInset);
    const std::function<double(double)> f = [&](double l) { return period_map_at(l, e2) - qv; };
    candidates[i] = bracketed_roots(f, grid, sample(f, grid, Exec::Serial));
  });

  double prev = tr.start.first, prev_e2 = tr.start.second;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (candidates[i].empty())
      throw ConvergenceError("trace_fiber: continuation lost at e2 = " + std::to_string(levels[i]) +
                                 ", last good point " + point_str(prev, prev_e2),
                             std::numeric_limits<double>::infinity());
    const double l = *std::min_element(candidates[i].begin(), candidates[i].end(),
                                       [&](double x, double y) { return std::abs(x - prev) < std::abs(y - prev); });
    auto p = moduli::classify_region(l, levels[i]);
    if (!is_timelike(p.region)) p.region = Region::Tplus;
    tr.points.push_back(p);
    prev = l;
    prev_e2 = levels[i];
  }
  if (tr.exceptional.region == Region::E) {
    const auto at = std::lower_bound(tr.points.begin(), tr.points.end(), tr.exceptional.e2,
                                     [](const ModulusPoint& p, double e) { return p.e2 < e; });
    tr.points.insert(at, tr.exceptional);
  }
  return tr;
}

double interior_slope_max(double lambda, Exec exec) {
  const auto [a, b] = period_domain(lambda);
  const double w = b - a;
  std::vector<double> centres;
  for (int k = 0; k < 64; ++k) centres.push_back(a + w * (0.02 + 0.68 * k / 63.0));
  for (int k = 0; k <= 48; ++k) centres.push_back(b - w * 0.3 * std::pow(10.0, -5.0 * k / 48.0));
  std::vector<double> slopes(centres.size());
  kernels::for_each_index(centres.size(), exec, [&](std::size_t i) {
    const double h = std::min((b - centres[i]) / 10, 1e-3 * w);
    slopes[i] = (period_map_at(lambda, centres[i] + h) - period_map_at(lambda, centres[i] - h)) / (2 * h);
  });
  return *std::max_element(slopes.begin(), slopes.end());
}

double locate_lambda_star(double lo, double hi, double tol, Exec exec) {
  const bool lo_positive = interior_slope_max(lo, exec) > 0;
  if (!lo_positive || interior_slope_max(hi, exec) > 0)
    throw NoRootError("locate_lambda_star: no sign change of the interior slope on the bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (interior_slope_max(mid, exec) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace halfelastica::periodmap
