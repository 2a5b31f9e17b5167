#pragma once

#include <functional>

#include "ffsim/attitude_dynamics.hpp"
#include "ffsim/frames.hpp"
#include "ffsim/orbit_dynamics.hpp"

namespace ffsim {

/// Chief-to-deputy separation along the sun line (m).
inline constexpr double kFocalLength = 40.0;
/// Tilt angle used in the primary body vector (rad).
inline constexpr double kTiltAngle = 10.0 * 3.14159265358979323846 / 180.0;

struct ReferenceAttitude {
  UnitQuaternion q;
  Vector3 omega = Vector3::Zero();
  Vector3 omega_dot = Vector3::Zero();
  int tilt_sign = 1;  // +1 or -1
};

/// Sun position (m, inertial) as a function of simulation time.
using SunModel = std::function<Vector3(double)>;

/// Reference point 40 m along the chief-to-sun line, in LVLH, with central
/// finite-difference derivatives over `step` seconds.
ReferenceState reference_trajectory(const ChiefState& chief, const SunModel& sun, double t,
                                    double step);

/// Reference position only (no derivatives).
Vector3 reference_position(const ChiefState& chief, const Vector3& sun_position);

/// Primary body vector [0, +-sin(theta), -1-cos(theta)].
Vector3 primary_body_vector(int tilt_sign);

/// TRIAD reference attitude: sun direction onto the tilted primary body
/// vector, orbit normal onto body x.
ReferenceAttitude reference_attitude(const Vector3& sun_inertial,
                                     const RotationMatrix& lvlh_to_inertial, int tilt_sign);

/// Picks the tilt branch for a thrust demand `demand_inertial` (N).
///
/// The demand is expressed in the untilted sun-pointing frame. The branch
/// is chosen so the fired y-thrust of the tilted frame has a component along
/// the demanded body-z direction. If |body-z demand| is below `deadband`
/// (or the y/z product vanishes) the previous branch is retained.
int select_tilt_branch(const Vector3& demand_inertial, const Vector3& sun_inertial,
                       const RotationMatrix& lvlh_to_inertial, int previous_sign,
                       double deadband);

struct RequirementFlags {
  bool orbit_ok = false;
  bool attitude_ok = false;
  double position_error = 0.0;  // m
  double pointing_error = 0.0;  // rad
};

inline constexpr double kPositionRequirement = 3.0;                            // m
inline constexpr double kPointingRequirement = 3.0 * 3.14159265358979323846 / 180.0;  // rad

RequirementFlags requirement_check(const RelativeState& rel, const ReferenceState& ref,
                                   const UnitQuaternion& q_error);

}  // namespace ffsim
