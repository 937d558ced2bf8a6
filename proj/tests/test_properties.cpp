#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "halfelastica/curvegen.hpp"
#include "halfelastica/dynamics.hpp"
#include "halfelastica/ellint.hpp"
#include "halfelastica/moduli.hpp"
#include "halfelastica/periodmap.hpp"
#include "generators.hpp"

using namespace halfelastica;

using testing::Gen;

TEST_CASE("E < K and K increasing on (0,1)") {
  Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    const double m = g.uniform(1e-12, 1 - 1e-12);
    CHECK(ellint::complete_E(m) < ellint::complete_K(m));
    const double m2 = g.uniform(m, 1 - 1e-13);
    CHECK(ellint::complete_K(m) <= ellint::complete_K(m2));
  }
}

TEST_CASE("Pi(0,m) = K(m) and Pi(n, 0, m) = 0") {
  Gen g(12);
  for (int i = 0; i < 500; ++i) {
    const double m = g.uniform(0, 0.999);
    CHECK(ellint::complete_Pi(0, m) == doctest::Approx(ellint::complete_K(m)).epsilon(1e-14));
    CHECK(ellint::incomplete_Pi(g.uniform(-10, 0.9), 0, m) == 0);
  }
}

TEST_CASE("incomplete integrals agree with quadrature on random arguments") {
  Gen g(13);
  for (int i = 0; i < 100; ++i) {
    const double m = g.uniform(0, 0.99), phi = g.uniform(0, 1.5), n = g.uniform(-5, 0.9);
    CAPTURE(m);
    CAPTURE(phi);
    CAPTURE(n);
    const auto f = ellint::quad_oracle([&](double t) { return 1 / std::sqrt(1 - m * std::sin(t) * std::sin(t)); }, 0, phi, 1e-13);
    const auto e = ellint::quad_oracle([&](double t) { return std::sqrt(1 - m * std::sin(t) * std::sin(t)); }, 0, phi, 1e-13);
    const auto p = ellint::quad_oracle(
        [&](double t) {
          const double s2 = std::sin(t) * std::sin(t);
          return 1 / ((1 - n * s2) * std::sqrt(1 - m * s2));
        },
        0, phi, 1e-13);
    CHECK(std::abs(ellint::incomplete_F(phi, m) - f.value) <= 1e-11);
    CHECK(std::abs(ellint::incomplete_E(phi, m) - e.value) <= 1e-11);
    CHECK(std::abs(ellint::incomplete_Pi(n, phi, m) - p.value) <= 1e-11);
  }
}

TEST_CASE("moduli bijection on random points") {
  Gen g(21);
  for (int i = 0; i < 1000; ++i) {
    const auto p = g.modulus();
    const auto q = moduli::roots_from_modulus(p);
    CAPTURE(p.lambda);
    CAPTURE(p.e2);
    CHECK(q.e1 > q.e2);
    CHECK(q.e2 > q.e3);
    CHECK(q.e3 > 0);
    CHECK(q.e4 < 0);
    CHECK(std::abs(q.e2 - p.e2) <= 1e-12);
    CHECK(std::abs(moduli::reconstruct_lambda(q.e1, q.e2) - p.lambda) <= 1e-9);
    CHECK(std::abs(moduli::reconstruct_c(q.e1, q.e2) - q.c) <= 1e-9);
    CHECK(std::abs(moduli::cardano_e1(p.lambda, p.e2) - q.e1) <= 1e-9 * std::max(1.0, q.e1));
    if (p.region == Region::S) CHECK(q.c > 0);
    if (is_timelike(p.region)) CHECK(q.c < 0);
  }
}

TEST_CASE("c vanishes on the lightlike locus") {
  Gen g(22);
  for (int i = 0; i < 200; ++i) {
    const auto p = g.lightlike();
    CHECK(p.region == Region::L);
    CHECK(std::abs(moduli::roots_from_modulus(p).c) <= 1e-10);
  }
}

TEST_CASE("monotone locus functions") {
  double prev_m = -1e300, prev_p = 1e300, prev_chi = -1e300;
  for (double l = -4.0; l < moduli::lambda_equilibrium() - 1e-3; l += 0.01) {
    const auto [em, ep] = moduli::eta_pm(l);
    CHECK(em > prev_m);
    CHECK(ep < prev_p);
    const double x = moduli::chi(l);
    CHECK(x > prev_chi);
    prev_m = em, prev_p = ep, prev_chi = x;
  }
}

TEST_CASE("no equilibria above the equilibrium threshold") {
  Gen g(31);
  for (int i = 0; i < 500; ++i) {
    const double l = g.uniform(moduli::lambda_equilibrium(), 2);
    const auto k = dynamics::classify_orbit(l, g.uniform(0.01, 4), g.uniform(-3, 3)).kind;
    CHECK(k != OrbitKind::StableEquilibrium);
    CHECK(k != OrbitKind::UnstableEquilibrium);
  }
}

TEST_CASE("orbits on random moduli: energy, evenness, wavelength") {
  Gen g(32);
  for (int i = 0; i < 40; ++i) {
    const auto p = g.modulus();
    CAPTURE(p.lambda);
    CAPTURE(p.e2);
    const double w = dynamics::wavelength(p);
    const auto sol = dynamics::solve_mu_on_grid(p, {-0.7 * w, -0.3 * w, 0.0, 0.3 * w, 0.7 * w});
    for (const auto& x : sol.samples)
      CHECK(std::abs(dynamics::energy_level(p.lambda, x.mu, x.mu_dot) - sol.roots.c) <= 1e-8);
    CHECK(std::abs(sol.samples[0].mu - sol.samples[4].mu) <= 1e-9);
    CHECK(std::abs(sol.samples[1].mu - sol.samples[3].mu) <= 1e-9);
    CHECK(std::abs(w - dynamics::wavelength_quadrature(p)) <= 1e-7);
    const auto half = dynamics::solve_mu_on_grid(p, {0.0, w / 2, w});
    CHECK(std::abs(half.samples[1].mu_dot) <= 1e-6);
    CHECK(std::abs(half.samples[2].mu - p.e2) <= 1e-8);
  }
}

TEST_CASE("curve invariants on random moduli") {
  Gen g(41);
  for (int i = 0; i < 20; ++i) {
    const auto p = i % 2 ? g.timelike() : g.spacelike();
    CAPTURE(p.lambda);
    CAPTURE(p.e2);
    const auto c = curvegen::generate_curve(p, 1.0, 128);
    const auto xi0 = curvegen::momentum(c.samples[0].gamma, c.samples[0].tangent, c.samples[0].mu, c.samples[0].mu_dot, p.lambda);
    for (const auto& s : c.samples) {
      CHECK(std::abs(minkowski_inner(s.tangent, s.tangent) - 1) <= 1e-8);
      CHECK(std::abs(minkowski_inner(s.acceleration, minkowski_cross(s.gamma, s.tangent)) - s.mu * s.mu) <= 1e-7);
      const auto xi = curvegen::momentum(s.gamma, s.tangent, s.mu, s.mu_dot, p.lambda);
      CHECK(coordinate_norm(xi - xi0) <= 1e-8);
    }
    const double n2 = minkowski_inner(xi0, xi0);
    CHECK((p.region == Region::S ? n2 > 0 : n2 < 0));
    if (c.kind == CurveKind::BT) {
      const auto [r0, r1] = curvegen::annulus_radii(p);
      for (const auto& s : c.samples) {
        const double r = std::hypot(s.poincare[0], s.poincare[1]);
        CHECK(r >= r0 - 1e-9);
        CHECK(r <= r1 + 1e-9);
      }
    }
  }
}

TEST_CASE("period map identities and oracle on random timelike points") {
  Gen g(51);
  for (int i = 0; i < 500; ++i) {
    const auto p = g.timelike();
    CAPTURE(p.lambda);
    CAPTURE(p.e2);
    const auto k = periodmap::elliptic_coeffs(p);
    const auto [ql, qr] = periodmap::q_identity(p);
    CHECK(std::abs(ql - qr) <= 1e-9);
    const auto [bl, br] = periodmap::b_plus_c_identity(p);
    CHECK(std::abs(bl - br) <= 1e-9);
    CHECK(k.m > 0);
    CHECK(k.m < 1);
  }
  for (int i = 0; i < 200; ++i) {
    const auto p = g.timelike();
    CAPTURE(p.lambda);
    CAPTURE(p.e2);
    CHECK(std::abs(periodmap::period_map(p) - periodmap::period_map_oracle(p)) <= 1e-9);
  }
}

TEST_CASE("oracle agreement within 1e-4 of the exceptional locus") {
  Gen g(52);
  for (int i = 0; i < 40; ++i) {
    const auto p = g.near_exceptional();
    CAPTURE(p.lambda);
    CAPTURE(p.e2);
    CHECK(std::abs(periodmap::period_map(p) - periodmap::period_map_oracle(p)) <= 1e-8);
  }
}
