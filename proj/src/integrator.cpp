#include "ffsim/integrator.hpp"

#include "ffsim/orbit_dynamics.hpp"

namespace ffsim {

ChiefState propagate_chief(const ChiefState& chief, double dt) {
  Vector6 x;
  x << chief.r, chief.v;
  const auto f = [](double, const Vector6& s) {
    const ChiefDerivative d = chief_derivative({s.head<3>(), s.tail<3>()});
    Vector6 out;
    out << d.r_dot, d.v_dot;
    return out;
  };
  const Vector6 next = integrate_step(x, f, 0.0, dt);
  return {next.head<3>(), next.tail<3>()};
}

}  // namespace ffsim
