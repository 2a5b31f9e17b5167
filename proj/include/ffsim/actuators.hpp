#pragma once

#include "ffsim/frames.hpp"

namespace ffsim {

struct ActuatorSpec {
  double u_max = 1.0e-3;         // N per thruster axis
  double u_resolution = 1.0e-5;  // N
  bool z_masked = true;          // no thrust along body z
  double tau_max = 0.23e-3;      // N m per wheel axis

  void validate() const;
};

/// Quantizes to the nearest multiple of `resolution`, halves away from zero.
double quantize(double value, double resolution);

/// Mask, per-axis saturation, then quantization of a body-frame thrust command.
Vector3 thrust_actuator(const Vector3& u_cmd_body, const ActuatorSpec& spec);

/// Per-axis wheel torque saturation.
Vector3 wheel_actuator(const Vector3& tau_cmd, const ActuatorSpec& spec);

/// True if `u` satisfies mask, saturation and quantization of `spec`.
bool thrust_is_admissible(const Vector3& u, const ActuatorSpec& spec);
bool torque_is_admissible(const Vector3& tau, const ActuatorSpec& spec);

}  // namespace ffsim
