#include "halfelastica/kernels.hpp"

#include <exception>
#include <stdexcept>

#include "halfelastica/periodmap.hpp"

namespace halfelastica::kernels {

void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body) {
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<double> interior_grid(double a, double b, int n, double inset_frac) {
  if (n < 2) throw std::invalid_argument("interior_grid: need at least two points");
  const double inset = inset_frac * (b - a);
  const double lo = a + inset, hi = b - inset;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  return out;
}

std::vector<double> period_map_batch(const std::vector<ModulusPoint>& points, Exec exec) {
  std::vector<double> out(points.size());
  for_each_index(points.size(), exec, [&](std::size_t i) { out[i] = periodmap::period_map(points[i]); });
  return out;
}

std::vector<std::array<double, 2>> scan_period_map(double lambda, int n, Exec exec) {
  const auto [a, b] = periodmap::period_domain(lambda);
  const auto grid = interior_grid(a, b, n, periodmap::kScanInset);
  std::vector<std::array<double, 2>> out(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t i) {
    out[i] = {grid[i], periodmap::period_map_at(lambda, grid[i])};
  });
  return out;
}

}  // namespace halfelastica::kernels
