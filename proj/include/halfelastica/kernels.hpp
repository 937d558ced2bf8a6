#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "halfelastica/moduli.hpp"

namespace halfelastica {

enum class Exec { Serial, Parallel };

namespace kernels {

// Runs body(i) for i in [0, n). The parallel path uses OpenMP; if any call
// throws, the exception of the lowest failing index is rethrown.
void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body);

// n points strictly inside (a, b), each end inset by inset_frac * (b - a).
std::vector<double> interior_grid(double a, double b, int n, double inset_frac);

std::vector<double> period_map_batch(const std::vector<ModulusPoint>& points, Exec exec);

// (e2, P) over n interior points of (a(lambda), eta_plus(lambda)).
std::vector<std::array<double, 2>> scan_period_map(double lambda, int n, Exec exec);

}  // namespace kernels
}  // namespace halfelastica
