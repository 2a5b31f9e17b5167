#pragma once

#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace ffsim {

/// One classical fourth-order Runge-Kutta step of dx/dt = f(t, x).
///
/// `State` needs vector-space arithmetic (Eigen vectors work). A zero step
/// returns the state unchanged; negative steps integrate backwards.
template <typename State, typename Derivative>
State integrate_step(const State& x, Derivative&& f, double t, double dt) {
  if (dt == 0.0) return x;
  const State k1 = f(t, x);
  const State k2 = f(t + 0.5 * dt, State(x + (0.5 * dt) * k1));
  const State k3 = f(t + 0.5 * dt, State(x + (0.5 * dt) * k2));
  const State k4 = f(t + dt, State(x + dt * k3));
  return State(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// Same, rejecting non-positive steps.
template <typename State, typename Derivative>
State integrate_forward(const State& x, Derivative&& f, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integration step must be positive");
  return integrate_step(x, std::forward<Derivative>(f), t, dt);
}

using Vector6 = Eigen::Matrix<double, 6, 1>;

struct ChiefState;

/// Two-body RK4 step of the chief (positive or negative `dt`).
ChiefState propagate_chief(const ChiefState& chief, double dt);

}  // namespace ffsim
