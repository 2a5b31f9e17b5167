#pragma once

#include "ffsim/frames.hpp"

namespace ffsim {

/// Body attitude with respect to the inertial frame, body rate, and the
/// reaction-wheel angular momentum expressed in the body frame.
struct AttitudeState {
  UnitQuaternion q;
  Vector3 omega = Vector3::Zero();  // rad/s
  Vector3 h_wheel = Vector3::Zero();  // N m s
};

struct QuaternionRate {
  Vector3 qv_dot;
  double q4_dot = 0.0;
};

struct AttitudeRate {
  Vector3 omega_dot;
  Vector3 h_wheel_dot;
};

struct InertiaModel {
  Matrix3 nominal = Eigen::Vector3d(8.33e-3, 8.33e-3, 3.33e-3).asDiagonal();
  double delta_bound = 0.10;             // fractional, per element
  Matrix3 delta = Matrix3::Zero();       // sampled symmetric offset

  Matrix3 actual() const { return nominal + delta; }
  /// Throws std::invalid_argument if the actual inertia is not symmetric
  /// positive definite.
  void validate() const;
};

struct WheelModel {
  Matrix3 inertia = Eigen::Vector3d(1e-5, 1e-5, 1e-5).asDiagonal();  // kg m^2
  double max_torque = 0.23e-3;  // N m per axis
};

QuaternionRate quat_derivative(const UnitQuaternion& q, const Vector3& omega);

/// Rigid body with wheels. Control torque is taken from the wheels, so the
/// wheel momentum derivative is -u_att.
AttitudeRate attitude_derivative(const AttitudeState& state, const Matrix3& inertia,
                                 const Vector3& u_att, const Vector3& d_att);

/// Same, with the inverse inertia supplied by the caller (hot path).
AttitudeRate attitude_derivative(const AttitudeState& state, const Matrix3& inertia,
                                 const Matrix3& inertia_inverse, const Vector3& u_att,
                                 const Vector3& d_att);

/// Tracking error quaternion of `q` relative to `q_ref`, with the scalar part
/// forced nonnegative.
UnitQuaternion error_quaternion(const UnitQuaternion& q, const UnitQuaternion& q_ref);

/// omega_e = omega - C_r^b(q_e) omega_ref
Vector3 error_rate(const Vector3& omega, const Vector3& omega_ref, const UnitQuaternion& q_error);

QuaternionRate error_quat_derivative(const UnitQuaternion& q_error, const Vector3& omega_error);

/// Rotation angle (rad) of a unit quaternion, 2 acos(|q4|).
double rotation_angle(const UnitQuaternion& q);

/// Inertial angular momentum C(q)^T (J omega + h_w).
Vector3 inertial_momentum(const AttitudeState& state, const Matrix3& inertia);

}  // namespace ffsim
