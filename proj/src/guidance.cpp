#include "ffsim/guidance.hpp"

#include <cmath>
#include <stdexcept>

#include "ffsim/integrator.hpp"

namespace ffsim {

Vector3 reference_position(const ChiefState& chief, const Vector3& sun_position) {
  const Vector3 line = sun_position - chief.r;
  if (!(line.norm() > 0.0)) throw std::invalid_argument("sun vector must be nonzero");
  const LvlhFrame frame = chief.lvlh();
  return kFocalLength * (frame.lvlh_to_inertial.matrix().transpose() * line.normalized());
}

ReferenceState reference_trajectory(const ChiefState& chief, const SunModel& sun, double t,
                                    double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const Vector3 r0 = reference_position(chief, sun(t));
  const Vector3 rp = reference_position(propagate_chief(chief, step), sun(t + step));
  const Vector3 rm = reference_position(propagate_chief(chief, -step), sun(t - step));
  return {r0, (rp - rm) / (2.0 * step), (rp - 2.0 * r0 + rm) / (step * step)};
}

Vector3 primary_body_vector(int tilt_sign) {
  if (tilt_sign != 1 && tilt_sign != -1) throw std::invalid_argument("tilt sign must be +1 or -1");
  return {0.0, tilt_sign * std::sin(kTiltAngle), -1.0 - std::cos(kTiltAngle)};
}

ReferenceAttitude reference_attitude(const Vector3& sun_inertial,
                                     const RotationMatrix& lvlh_to_inertial, int tilt_sign) {
  const Vector3 secondary = lvlh_to_inertial * Vector3::UnitZ();
  const RotationMatrix c_ib =
      triad(sun_inertial, secondary, primary_body_vector(tilt_sign), Vector3::UnitX());
  ReferenceAttitude ref;
  ref.q = dcm_to_quat(c_ib);
  ref.tilt_sign = tilt_sign;
  return ref;
}

int select_tilt_branch(const Vector3& demand_inertial, const Vector3& sun_inertial,
                       const RotationMatrix& lvlh_to_inertial, int previous_sign,
                       double deadband) {
  const Vector3 secondary = lvlh_to_inertial * Vector3::UnitZ();
  const RotationMatrix untilted = triad(sun_inertial, secondary, -Vector3::UnitZ(), Vector3::UnitX());
  const Vector3 demand_body = untilted * demand_inertial;
  const double z_demand = demand_body.z();
  if (std::abs(z_demand) < deadband) return previous_sign;

  const Vector3 axis_inertial = untilted.transpose() * Vector3::UnitZ();
  double best_gain = 0.0;
  int best_sign = previous_sign;
  bool first = true;
  for (int sign : {previous_sign, -previous_sign}) {
    const RotationMatrix c = quat_to_dcm(reference_attitude(sun_inertial, lvlh_to_inertial, sign).q);
    Vector3 fired = c * demand_inertial;
    fired.z() = 0.0;
    const double gain = std::copysign(1.0, z_demand) * (c.transpose() * fired).dot(axis_inertial);
    // Strict improvement required to leave the current branch.
    if (first || gain > best_gain + 1e-15 * demand_inertial.norm()) {
      best_gain = gain;
      best_sign = sign;
    }
    first = false;
  }
  return best_sign;
}

RequirementFlags requirement_check(const RelativeState& rel, const ReferenceState& ref,
                                   const UnitQuaternion& q_error) {
  RequirementFlags flags;
  flags.position_error = (rel.r - ref.r).norm();
  flags.pointing_error = rotation_angle(q_error);
  flags.orbit_ok = flags.position_error <= kPositionRequirement;
  flags.attitude_ok = flags.pointing_error <= kPointingRequirement;
  return flags;
}

}  // namespace ffsim
