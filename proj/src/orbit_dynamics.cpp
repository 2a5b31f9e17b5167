#include "ffsim/orbit_dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "ffsim/constants.hpp"

namespace ffsim {

using constants::kMuEarth;

void MassModel::validate() const {
  if (!(nominal > 0.0)) throw std::invalid_argument("nominal mass must be positive");
  if (delta_bound < 0.0) throw std::invalid_argument("mass uncertainty bound must be nonnegative");
  if (std::abs(delta) > delta_bound * nominal * (1.0 + 1e-12)) {
    throw std::invalid_argument("sampled mass offset exceeds its bound");
  }
  if (!(actual() > 0.0)) throw std::invalid_argument("actual mass must be positive");
}

ChiefState circular_chief(double radius, double inclination, double raan, double arg_latitude) {
  const double speed = std::sqrt(kMuEarth / radius);
  const Vector3 r_pf(radius * std::cos(arg_latitude), radius * std::sin(arg_latitude), 0.0);
  const Vector3 v_pf(-speed * std::sin(arg_latitude), speed * std::cos(arg_latitude), 0.0);
  const Matrix3 rot = (Eigen::AngleAxisd(raan, Vector3::UnitZ()) *
                       Eigen::AngleAxisd(inclination, Vector3::UnitX()))
                          .toRotationMatrix();
  return {rot * r_pf, rot * v_pf};
}

ChiefDerivative chief_derivative(const ChiefState& chief, const Vector3& perturbation) {
  const double rn = chief.r.norm();
  if (!(rn > 0.0)) throw std::invalid_argument("chief position must be nonzero");
  return {chief.v, -kMuEarth / (rn * rn * rn) * chief.r + perturbation};
}

RelativeDynamicsTerms relative_terms(const ChiefState& chief, const LvlhFrame& frame,
                                     const Vector3& r_rel) {
  const double rc = chief.r.norm();
  const double r_d = (Vector3(rc, 0.0, 0.0) + r_rel).norm();
  if (!(r_d > 0.0)) throw std::invalid_argument("deputy position must be nonzero");
  const double mu_rd3 = kMuEarth / (r_d * r_d * r_d);
  const double w = frame.theta_dot;
  const double wd = frame.theta_ddot;

  RelativeDynamicsTerms t;
  t.a1 << w * w - mu_rd3, wd, 0.0,
          -wd, w * w - mu_rd3, 0.0,
          0.0, 0.0, -mu_rd3;
  t.a2 << 0.0, 2.0 * w, 0.0,
          -2.0 * w, 0.0, 0.0,
          0.0, 0.0, 0.0;
  t.f = Vector3(kMuEarth / (rc * rc) - kMuEarth * rc / (r_d * r_d * r_d), 0.0, 0.0);
  t.r_d = r_d;
  return t;
}

Vector3 relative_accel(const ChiefState& chief, const LvlhFrame& frame, const RelativeState& rel,
                       const Vector3& u, const Vector3& d, double mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  const RelativeDynamicsTerms t = relative_terms(chief, frame, rel.r);
  return t.a1 * rel.r + t.a2 * rel.v + t.f + (u + d) / mass;
}

Vector3 relative_accel(const ChiefState& chief, const RelativeState& rel, const Vector3& u,
                       const Vector3& d, double mass) {
  return relative_accel(chief, chief.lvlh(), rel, u, d, mass);
}

Vector3 orbit_error_derivative(const ChiefState& chief, const RelativeState& error,
                               const ReferenceState& reference, const Vector3& u,
                               const Vector3& d, double mass) {
  const RelativeState composed{error.r + reference.r, error.v + reference.v};
  return relative_accel(chief, composed, u, d, mass) - reference.a;
}

InertialState deputy_inertial(const ChiefState& chief, const LvlhFrame& frame,
                              const RelativeState& rel) {
  const Vector3 omega(0.0, 0.0, frame.theta_dot);
  const Matrix3& c = frame.lvlh_to_inertial.matrix();
  return {chief.r + c * rel.r, chief.v + c * (rel.v + omega.cross(rel.r))};
}

RelativeState relative_from_inertial(const ChiefState& chief, const InertialState& deputy) {
  const LvlhFrame frame = chief.lvlh();
  const Matrix3 c_il = frame.lvlh_to_inertial.matrix().transpose();
  const Vector3 omega(0.0, 0.0, frame.theta_dot);
  const Vector3 r = c_il * (deputy.r - chief.r);
  const Vector3 v = c_il * (deputy.v - chief.v) - omega.cross(r);
  return {r, v};
}

}  // namespace ffsim
