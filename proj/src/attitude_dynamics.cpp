#include "ffsim/attitude_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffsim {

void InertiaModel::validate() const {
  const Matrix3 j = actual();
  if ((j - j.transpose()).cwiseAbs().maxCoeff() > 1e-15 * j.cwiseAbs().maxCoeff()) {
    throw std::invalid_argument("inertia must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix3> es(j);
  if (!(es.eigenvalues().minCoeff() > 0.0)) {
    throw std::invalid_argument("inertia must be positive definite");
  }
  if (delta_bound < 0.0) throw std::invalid_argument("inertia uncertainty bound must be nonnegative");
}

QuaternionRate quat_derivative(const UnitQuaternion& q, const Vector3& omega) {
  return {0.5 * (q.q4 * omega + q.qv.cross(omega)), -0.5 * q.qv.dot(omega)};
}

AttitudeRate attitude_derivative(const AttitudeState& s, const Matrix3& inertia,
                                 const Matrix3& inertia_inverse, const Vector3& u_att,
                                 const Vector3& d_att) {
  const Vector3 momentum = inertia * s.omega + s.h_wheel;
  return {inertia_inverse * (-s.omega.cross(momentum) + u_att + d_att), -u_att};
}

AttitudeRate attitude_derivative(const AttitudeState& s, const Matrix3& inertia,
                                 const Vector3& u_att, const Vector3& d_att) {
  return attitude_derivative(s, inertia, inertia.inverse(), u_att, d_att);
}

UnitQuaternion error_quaternion(const UnitQuaternion& q, const UnitQuaternion& q_ref) {
  Vector3 qv = q_ref.q4 * q.qv - q.q4 * q_ref.qv - q_ref.qv.cross(q.qv);
  double q4 = q.q4 * q_ref.q4 + q_ref.qv.dot(q.qv);
  if (q4 < 0.0) {
    qv = -qv;
    q4 = -q4;
  }
  return UnitQuaternion::normalized(qv, q4);
}

Vector3 error_rate(const Vector3& omega, const Vector3& omega_ref, const UnitQuaternion& q_error) {
  if (omega_ref.isZero(0.0)) return omega;
  return omega - quat_to_dcm(q_error) * omega_ref;
}

QuaternionRate error_quat_derivative(const UnitQuaternion& q_error, const Vector3& omega_error) {
  return quat_derivative(q_error, omega_error);
}

double rotation_angle(const UnitQuaternion& q) {
  return 2.0 * std::acos(std::clamp(std::abs(q.q4), 0.0, 1.0));
}

Vector3 inertial_momentum(const AttitudeState& s, const Matrix3& inertia) {
  return quat_to_dcm(s.q).matrix().transpose() * (inertia * s.omega + s.h_wheel);
}

}  // namespace ffsim
