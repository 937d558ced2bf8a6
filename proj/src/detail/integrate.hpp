#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "halfelastica/dynamics.hpp"
#include "halfelastica/errors.hpp"

namespace halfelastica::detail {

// Integrates x' = rhs(x) from x(0) = x0 and records the state at every grid
// point. Points with s < 0 are reached by a second, backward integration.
template <class State, class Rhs>
std::vector<State> integrate_on_grid(const State& x0, Rhs rhs, const std::vector<double>& grid,
                                     const StepControl& ctrl, const char* who) {
  namespace odeint = boost::numeric::odeint;
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw DomainError(std::string(who) + ": grid must be sorted");
  std::vector<State> out(grid.size(), x0);
  const auto split =
      static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), 0.0) - grid.begin());
  constexpr std::size_t kSkip = static_cast<std::size_t>(-1);

  auto run = [&](const std::vector<double>& times, const std::vector<std::size_t>& slots,
                 double dt) {
    State x = x0;
    std::size_t k = 0;
    auto observe = [&](const State& st, double) {
      const std::size_t idx = slots[k++];
      if (idx != kSkip) out[idx] = st;
    };
    auto system = [&](const State& st, State& dst, double) { rhs(st, dst); };
    auto stepper =
        odeint::make_controlled(ctrl.abs_tol, ctrl.rel_tol, odeint::runge_kutta_fehlberg78<State>());
    try {
      odeint::integrate_times(stepper, system, x, times.begin(), times.end(), dt, observe);
    } catch (const std::exception& ex) {
      throw ConvergenceError(std::string(who) + ": " + ex.what(), ctrl.rel_tol);
    }
  };

  const double span =
      grid.empty() ? 1.0 : std::max(std::abs(grid.front()), std::abs(grid.back()));
  const double dt = std::max(span, 1.0) * 1e-3;

  std::vector<double> times{0.0};
  std::vector<std::size_t> slots{kSkip};
  for (std::size_t i = split; i < grid.size(); ++i) {
    if (grid[i] == 0.0) {
      out[i] = x0;
      continue;
    }
    times.push_back(grid[i]);
    slots.push_back(i);
  }
  if (times.size() > 1) run(times, slots, dt);

  times.assign(1, 0.0);
  slots.assign(1, kSkip);
  for (std::size_t i = split; i-- > 0;) {
    times.push_back(grid[i]);
    slots.push_back(i);
  }
  if (times.size() > 1) run(times, slots, -dt);
  return out;
}

}  // namespace halfelastica::detail
