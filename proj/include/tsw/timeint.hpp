#pragma once

#include <functional>

#include "tsw/tsw_core.hpp"

namespace tsw {

struct StepConfig {
  double dt = 60.0;
  long nsteps = 0;
};

// Update primitives used by the integrator. `blend(a, x, b, y)` with a + b = 1
// is evaluated as x + b*(y - x) so that identical inputs are reproduced exactly.
inline double euler(double s, double dt, double ds) { return s + dt * ds; }
inline double blend(double a, double x, double b, double y) {
  (void)a;
  return x + b * (y - x);
}

TswState euler(const TswState& s, double dt, const Tendency& ds);
TswState blend(double a, const TswState& x, double b, const TswState& y);

/// Three-stage strong-stability-preserving Runge-Kutta step (Shu-Osher form):
///   s1 = s + dt R(s)
///   s2 = 3/4 s + 1/4 (s1 + dt R(s1))
///   s+ = 1/3 s + 2/3 (s2 + dt R(s2))
template <class State, class Rhs>
State ssprk3_step(const State& s, double dt, Rhs&& rhs) {
  const State s1 = euler(s, dt, rhs(s));
  const State s2 = blend(0.75, s, 0.25, euler(s1, dt, rhs(s1)));
  return blend(1.0 / 3.0, s, 2.0 / 3.0, euler(s2, dt, rhs(s2)));
}

using TswRhs = std::function<Tendency(const TswState&)>;

/// One step of the model's own right-hand side, with the positivity guard on every stage.
TswState ssprk3_step(const TswModel& model, const TswState& s, double dt);

}  // namespace tsw
