#pragma once

#include <Eigen/Dense>

namespace ffsim {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Rotation matrix tolerance used for orthonormality checks.
inline constexpr double kRotationTolerance = 1e-9;
/// Threshold below which a cross product is treated as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-12;

/// Scalar-last unit quaternion (qv, q4).
///
/// Uses the passive convention: quat_to_dcm(q) maps vectors expressed in the
/// source frame into the target (body) frame.
struct UnitQuaternion {
  Vector3 qv = Vector3::Zero();
  double q4 = 1.0;

  static UnitQuaternion identity() { return {}; }

  /// Normalizes (qv, q4). Throws std::invalid_argument on a zero quaternion.
  static UnitQuaternion normalized(const Vector3& qv, double q4);

  /// Rotation of `angle` radians about `axis` (normalized internally).
  static UnitQuaternion from_axis_angle(const Vector3& axis, double angle);

  double norm() const { return std::sqrt(qv.squaredNorm() + q4 * q4); }
  UnitQuaternion operator-() const { return {-qv, -q4}; }
};

/// Rotation matrix with the orthonormal / det=+1 invariant checked on
/// construction.
class RotationMatrix {
 public:
  RotationMatrix() : m_(Matrix3::Identity()) {}
  /// Throws std::invalid_argument if `m` is not a proper rotation within
  /// kRotationTolerance (after an optional Gram-Schmidt cleanup).
  explicit RotationMatrix(const Matrix3& m);

  static RotationMatrix identity() { return RotationMatrix(); }

  const Matrix3& matrix() const { return m_; }
  RotationMatrix transpose() const;
  Vector3 operator*(const Vector3& v) const { return m_ * v; }
  RotationMatrix operator*(const RotationMatrix& other) const;
  double orthonormality_error() const;

 private:
  struct Unchecked {};
  RotationMatrix(const Matrix3& m, Unchecked) : m_(m) {}
  Matrix3 m_;
};

Matrix3 skew(const Vector3& v);

/// Componentwise |x|^rho sgn(x). Throws std::invalid_argument unless
/// rho is in (1, 2).
Vector3 sig_pow(const Vector3& v, double rho);

/// Scalar form of sig_pow without the exponent range check.
double sig_pow_scalar(double x, double rho);

RotationMatrix quat_to_dcm(const UnitQuaternion& q);

/// Positive-scalar extraction; switches to largest-diagonal extraction when
/// 1 + trace(C) is small.
UnitQuaternion dcm_to_quat(const RotationMatrix& c);

/// Two-vector attitude: returns C_i^b mapping the reference frame to the body
/// frame. Throws std::invalid_argument if either pair is collinear.
RotationMatrix triad(const Vector3& primary_ref, const Vector3& secondary_ref,
                     const Vector3& primary_body, const Vector3& secondary_body);

/// Re-orthonormalizes a nearly orthonormal matrix (Gram-Schmidt on columns).
Matrix3 gram_schmidt(const Matrix3& m);

struct LvlhFrame {
  /// Columns are the radial, along-track and cross-track axes in inertial
  /// coordinates, i.e. C_l^i.
  RotationMatrix lvlh_to_inertial;
  /// Orbital angular rate |r x v| / r^2 (rad/s).
  double theta_dot = 0.0;
  /// Orbital angular acceleration -2 rdot thetadot / r (rad/s^2).
  double theta_ddot = 0.0;
};

/// Throws std::invalid_argument for a rectilinear (r parallel to v) orbit.
LvlhFrame eci_to_lvlh(const Vector3& r_inertial, const Vector3& v_inertial);

}  // namespace ffsim
