#include "ffsim/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace ffsim {

namespace {

// Matrices further than this from orthonormal are rejected rather than
// repaired.
constexpr double kRepairLimit = 1e-6;

double orthonormality(const Matrix3& m) {
  return (m.transpose() * m - Matrix3::Identity()).cwiseAbs().maxCoeff();
}

Matrix3 repaired_if_needed(const Matrix3& m) {
  return orthonormality(m) > kRotationTolerance ? gram_schmidt(m) : m;
}

}  // namespace

UnitQuaternion UnitQuaternion::normalized(const Vector3& qv, double q4) {
  const double n = std::sqrt(qv.squaredNorm() + q4 * q4);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("quaternion norm must be positive and finite");
  }
  return {qv / n, q4 / n};
}

UnitQuaternion UnitQuaternion::from_axis_angle(const Vector3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw std::invalid_argument("rotation axis must be nonzero");
  return normalized(axis / n * std::sin(0.5 * angle), std::cos(0.5 * angle));
}

RotationMatrix::RotationMatrix(const Matrix3& m) {
  if (!m.allFinite()) throw std::invalid_argument("rotation matrix has non-finite entries");
  const double err = orthonormality(m);
  if (err > kRepairLimit) {
    throw std::invalid_argument("matrix is not orthonormal");
  }
  m_ = repaired_if_needed(m);
  if (m_.determinant() < 0.0) {
    throw std::invalid_argument("matrix is a reflection, not a rotation");
  }
}

RotationMatrix RotationMatrix::transpose() const {
  return RotationMatrix(m_.transpose(), Unchecked{});
}

RotationMatrix RotationMatrix::operator*(const RotationMatrix& other) const {
  return RotationMatrix(repaired_if_needed(m_ * other.m_), Unchecked{});
}

double RotationMatrix::orthonormality_error() const { return orthonormality(m_); }

Matrix3 skew(const Vector3& v) {
  Matrix3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

double sig_pow_scalar(double x, double rho) {
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x), rho), x);
}

Vector3 sig_pow(const Vector3& v, double rho) {
  if (!(rho > 1.0 && rho < 2.0)) {
    throw std::invalid_argument("rho out of (1,2)");
  }
  return {sig_pow_scalar(v.x(), rho), sig_pow_scalar(v.y(), rho),
          sig_pow_scalar(v.z(), rho)};
}

RotationMatrix quat_to_dcm(const UnitQuaternion& q) {
  const Vector3& e = q.qv;
  const double s = q.q4;
  Matrix3 c = (s * s - e.squaredNorm()) * Matrix3::Identity() +
              2.0 * e * e.transpose() - 2.0 * s * skew(e);
  return RotationMatrix(c);
}

UnitQuaternion dcm_to_quat(const RotationMatrix& rot) {
  const Matrix3& c = rot.matrix();
  const double trace = c.trace();
  // The direct formula divides by 4 q4; below this guard use the branch
  // keyed on the largest diagonal term instead.
  constexpr double kSmallScalar = 1e-3;
  if (1.0 + trace > 4.0 * kSmallScalar * kSmallScalar) {
    const double q4 = 0.5 * std::sqrt(1.0 + trace);
    const Vector3 qv = Vector3(c(1, 2) - c(2, 1), c(2, 0) - c(0, 2), c(0, 1) - c(1, 0)) /
                       (4.0 * q4);
    return UnitQuaternion::normalized(qv, q4);
  }

  int k = 0;
  c.diagonal().maxCoeff(&k);
  const int i = (k + 1) % 3;
  const int j = (k + 2) % 3;
  const double qk = 0.5 * std::sqrt(std::max(0.0, 1.0 + 2.0 * c(k, k) - trace));
  Vector3 qv;
  qv[k] = qk;
  qv[i] = (c(k, i) + c(i, k)) / (4.0 * qk);
  qv[j] = (c(k, j) + c(j, k)) / (4.0 * qk);
  // q4 from the antisymmetric part, matching the sign of the direct formula.
  double q4 = (c(i, j) - c(j, i)) / (4.0 * qk);
  if (q4 < 0.0) {
    qv = -qv;
    q4 = -q4;
  }
  return UnitQuaternion::normalized(qv, q4);
}

namespace {

Matrix3 triad_basis(const Vector3& primary, const Vector3& secondary) {
  const Vector3 cross = primary.cross(secondary);
  if (primary.norm() < kDegeneracyTolerance ||
      cross.norm() < kDegeneracyTolerance * primary.norm() * std::max(1.0, secondary.norm())) {
    throw std::invalid_argument("triad: primary and secondary vectors are collinear");
  }
  Matrix3 basis;
  basis.col(0) = primary.normalized();
  basis.col(1) = cross.normalized();
  basis.col(2) = primary.cross(cross).normalized();
  return basis;
}

}  // namespace

RotationMatrix triad(const Vector3& primary_ref, const Vector3& secondary_ref,
                     const Vector3& primary_body, const Vector3& secondary_body) {
  const Matrix3 ref = triad_basis(primary_ref, secondary_ref);
  const Matrix3 body = triad_basis(primary_body, secondary_body);
  return RotationMatrix(body * ref.transpose());
}

Matrix3 gram_schmidt(const Matrix3& m) {
  Matrix3 out;
  Vector3 a = m.col(0).normalized();
  Vector3 b = (m.col(1) - a.dot(m.col(1)) * a).normalized();
  out.col(0) = a;
  out.col(1) = b;
  out.col(2) = a.cross(b);
  return out;
}

LvlhFrame eci_to_lvlh(const Vector3& r, const Vector3& v) {
  const double rn = r.norm();
  const Vector3 h = r.cross(v);
  if (rn < kDegeneracyTolerance || h.norm() < kDegeneracyTolerance * rn * std::max(1.0, v.norm())) {
    throw std::invalid_argument("eci_to_lvlh: degenerate (rectilinear) orbit");
  }
  Matrix3 c;
  c.col(0) = r / rn;
  c.col(2) = h.normalized();
  c.col(1) = c.col(2).cross(c.col(0));
  LvlhFrame frame;
  frame.lvlh_to_inertial = RotationMatrix(c);
  frame.theta_dot = h.norm() / (rn * rn);
  const double r_dot = r.dot(v) / rn;
  frame.theta_ddot = -2.0 * r_dot * frame.theta_dot / rn;
  return frame;
}

}  // namespace ffsim
