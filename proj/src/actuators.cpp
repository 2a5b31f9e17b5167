#include "ffsim/actuators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffsim {

void ActuatorSpec::validate() const {
  if (!(u_max > 0.0)) throw std::invalid_argument("u_max must be positive");
  if (!(u_resolution > 0.0)) throw std::invalid_argument("u_resolution must be positive");
  if (!(tau_max > 0.0)) throw std::invalid_argument("tau_max must be positive");
  if (u_resolution > u_max) throw std::invalid_argument("u_resolution exceeds u_max");
}

double quantize(double value, double resolution) {
  return std::round(value / resolution) * resolution;
}

Vector3 thrust_actuator(const Vector3& u_cmd_body, const ActuatorSpec& spec) {
  Vector3 out;
  for (int i = 0; i < 3; ++i) {
    if (i == 2 && spec.z_masked) {
      out[i] = 0.0;
      continue;
    }
    const double clamped = std::clamp(u_cmd_body[i], -spec.u_max, spec.u_max);
    out[i] = quantize(clamped, spec.u_resolution);
  }
  return out;
}

Vector3 wheel_actuator(const Vector3& tau_cmd, const ActuatorSpec& spec) {
  return tau_cmd.cwiseMax(-spec.tau_max).cwiseMin(spec.tau_max);
}

bool thrust_is_admissible(const Vector3& u, const ActuatorSpec& spec) {
  if (spec.z_masked && u.z() != 0.0) return false;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(u[i]) > spec.u_max * (1.0 + 1e-12)) return false;
    if (quantize(u[i], spec.u_resolution) != u[i]) return false;
  }
  return true;
}

bool torque_is_admissible(const Vector3& tau, const ActuatorSpec& spec) {
  return tau.cwiseAbs().maxCoeff() <= spec.tau_max;
}

}  // namespace ffsim
