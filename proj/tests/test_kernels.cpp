#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "halfelastica/errors.hpp"
#include "halfelastica/kernels.hpp"
#include "halfelastica/periodmap.hpp"

using namespace halfelastica;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("for_each_index visits every index once") {
  for (Exec e : {Exec::Serial, Exec::Parallel}) {
    std::vector<std::atomic<int>> hits(1000);
    kernels::for_each_index(hits.size(), e, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  kernels::for_each_index(0, Exec::Parallel, [](std::size_t) { FAIL("called"); });
}

TEST_CASE("for_each_index rethrows the lowest failing index") {
  for (Exec e : {Exec::Serial, Exec::Parallel}) {
    try {
      kernels::for_each_index(200, e, [](std::size_t i) {
        if (i == 37 || i == 150) throw std::runtime_error(std::to_string(i));
      });
      FAIL("no exception");
    } catch (const std::runtime_error& err) {
      CHECK(std::string(err.what()) == "37");
    }
  }
}

TEST_CASE("interior grid") {
  const auto g = kernels::interior_grid(1, 3, 5, 0.1);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(1.2));
  CHECK(g.back() == doctest::Approx(2.8));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("scan is bitwise identical serial and parallel") {
  for (double l : {-1.3, -1.2, -0.95}) {
    const auto s = kernels::scan_period_map(l, 257, Exec::Serial);
    const auto p = kernels::scan_period_map(l, 257, Exec::Parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(same_bits(s[i][0], p[i][0]));
      CHECK(same_bits(s[i][1], p[i][1]));
    }
    const auto [a, b] = periodmap::period_domain(l);
    CHECK(s.front()[0] > a);
    CHECK(s.back()[0] < b);
  }
}

TEST_CASE("batch evaluation is bitwise identical and matches single calls") {
  std::vector<ModulusPoint> pts;
  for (double l = -2.0; l < -0.9; l += 0.1) {
    const auto [a, b] = periodmap::period_domain(l);
    for (int k = 1; k < 8; ++k) pts.push_back(moduli::classify_region(l, a + (b - a) * k / 8.0));
  }
  const auto s = kernels::period_map_batch(pts, Exec::Serial);
  const auto p = kernels::period_map_batch(pts, Exec::Parallel);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(same_bits(s[i], p[i]));
    CHECK(same_bits(s[i], periodmap::period_map(pts[i])));
  }
  pts.push_back(moduli::classify_region(-1.3, 1.2));
  CHECK_THROWS_AS(kernels::period_map_batch(pts, Exec::Parallel), RegionError);
}

TEST_CASE("string search and fiber trace agree across execution modes") {
  const auto s = periodmap::find_strings(-0.95, Rational{3, 2}, Exec::Serial);
  const auto p = periodmap::find_strings(-0.95, Rational{3, 2}, Exec::Parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(same_bits(s[i].modulus.e2, p[i].modulus.e2));
  const auto fs = periodmap::trace_fiber(Rational{11, 10}, 24, Exec::Serial);
  const auto fp = periodmap::trace_fiber(Rational{11, 10}, 24, Exec::Parallel);
  REQUIRE(fs.points.size() == fp.points.size());
  for (std::size_t i = 0; i < fs.points.size(); ++i) {
    CHECK(same_bits(fs.points[i].lambda, fp.points[i].lambda));
    CHECK(same_bits(fs.points[i].e2, fp.points[i].e2));
  }
  CHECK(same_bits(periodmap::interior_slope_max(-0.99, Exec::Serial), periodmap::interior_slope_max(-0.99, Exec::Parallel)));
}
