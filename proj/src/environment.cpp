#include "ffsim/environment.hpp"

#include <cmath>
#include <stdexcept>

#include "ffsim/constants.hpp"

namespace ffsim {

using namespace constants;

void EnvironmentConfig::validate() const {
  const double magnitudes[] = {density_ref,      scale_height,           deputy_drag_area,
                               deputy_drag_coefficient, deputy_srp_area, deputy_reflectivity,
                               chief.drag_area,  chief.drag_coefficient, chief.srp_area,
                               chief.reflectivity, dipole_magnitude,     force_cap,
                               torque_cap};
  for (double m : magnitudes) {
    if (!(m >= 0.0)) throw std::invalid_argument("environment magnitudes must be nonnegative");
  }
  if (!(scale_height > 0.0)) throw std::invalid_argument("scale height must be positive");
  if (!(chief.mass > 0.0)) throw std::invalid_argument("chief mass must be positive");
  if (!(dipole_direction.norm() > 0.0)) throw std::invalid_argument("dipole direction must be nonzero");
}

EnvironmentConfig EnvironmentConfig::all_disabled() const {
  EnvironmentConfig c = *this;
  c.j2 = c.third_body = c.drag = c.srp = c.gravity_gradient = c.magnetic = false;
  return c;
}

Vector3 sun_vector(double t) {
  const double lon = 2.0 * kPi * t / kSecondsPerYear;
  return {std::cos(lon), std::cos(kObliquity) * std::sin(lon), std::sin(kObliquity) * std::sin(lon)};
}

Vector3 sun_position(double t) { return kAstronomicalUnit * sun_vector(t); }

Vector3 moon_position(double t) {
  // Circular orbit in a plane inclined to the ecliptic, node fixed on the
  // equinox line; then rotated from ecliptic to equatorial coordinates.
  const double u = 2.0 * kPi * t / kSiderealMonth;
  const Vector3 ecliptic(std::cos(u), std::cos(kMoonInclination) * std::sin(u),
                         std::sin(kMoonInclination) * std::sin(u));
  const Matrix3 to_equatorial = Eigen::AngleAxisd(kObliquity, Vector3::UnitX()).toRotationMatrix();
  return kMoonDistance * (to_equatorial * ecliptic);
}

Vector3 gravity_gradient_torque(const UnitQuaternion& q, const Vector3& r_inertial,
                                const Matrix3& inertia) {
  const double r = r_inertial.norm();
  if (!(r > 0.0)) throw std::invalid_argument("position must be nonzero");
  const Vector3 nadir = quat_to_dcm(q) * (-r_inertial / r);
  return 3.0 * kMuEarth / (r * r * r) * nadir.cross(inertia * nadir);
}

Vector3 magnetic_field(const Vector3& r_inertial, double greenwich_angle) {
  const double r = r_inertial.norm();
  if (!(r > 0.0)) throw std::invalid_argument("position must be nonzero");
  // Dipole moment points roughly to geographic south; its axis is tilted and
  // rotates with the Earth.
  const Vector3 m_hat(-std::sin(kDipoleTilt) * std::cos(greenwich_angle),
                      -std::sin(kDipoleTilt) * std::sin(greenwich_angle),
                      -std::cos(kDipoleTilt));
  const Vector3 r_hat = r_inertial / r;
  const double scale = kDipoleEquatorialField * std::pow(kEarthRadius / r, 3);
  return scale * (3.0 * m_hat.dot(r_hat) * r_hat - m_hat);
}

Vector3 magnetic_torque(const UnitQuaternion& q, const Vector3& r_inertial,
                        const Vector3& dipole_body, double greenwich_angle) {
  const Vector3 b_body = quat_to_dcm(q) * magnetic_field(r_inertial, greenwich_angle);
  return dipole_body.cross(b_body);
}

double atmospheric_density(double altitude, const EnvironmentConfig& config) {
  return config.density_ref * std::exp(-(altitude - config.altitude_ref) / config.scale_height);
}

Vector3 drag_force(const Vector3& r_inertial, const Vector3& v_inertial, double area,
                   double drag_coefficient, const EnvironmentConfig& config) {
  const Vector3 v_rel = v_inertial - Vector3(0.0, 0.0, kEarthRotationRate).cross(r_inertial);
  const double rho = atmospheric_density(r_inertial.norm() - kEarthRadius, config);
  return -0.5 * rho * drag_coefficient * area * v_rel.norm() * v_rel;
}

Vector3 srp_force(const Vector3& sun_dir, double area, double reflectivity, bool shadowed) {
  if (shadowed) return Vector3::Zero();
  return -kSolarPressure * reflectivity * area * sun_dir.normalized();
}

bool in_shadow(const Vector3& r_inertial, const Vector3& sun_dir) {
  const Vector3 s = sun_dir.normalized();
  const double along = r_inertial.dot(s);
  if (along >= 0.0) return false;
  return (r_inertial - along * s).norm() < kEarthRadius;
}

Vector3 third_body_accel(const Vector3& r_sat, const Vector3& r_body, double mu_body) {
  const Vector3 rel = r_body - r_sat;
  const double d = rel.norm();
  const double rb = r_body.norm();
  if (!(d > 0.0)) throw std::invalid_argument("satellite coincides with the third body");
  return mu_body * (rel / (d * d * d) - r_body / (rb * rb * rb));
}

Vector3 j2_accel(const Vector3& r_inertial) {
  const double r2 = r_inertial.squaredNorm();
  const double r = std::sqrt(r2);
  if (!(r > 0.0)) throw std::invalid_argument("position must be nonzero");
  const double z2_r2 = r_inertial.z() * r_inertial.z() / r2;
  const double k = -1.5 * kJ2 * kMuEarth * kEarthRadius * kEarthRadius / (r2 * r2 * r);
  return {k * r_inertial.x() * (1.0 - 5.0 * z2_r2), k * r_inertial.y() * (1.0 - 5.0 * z2_r2),
          k * r_inertial.z() * (3.0 - 5.0 * z2_r2)};
}

DisturbanceSample assemble_disturbances(const DisturbanceInputs& in, const EnvironmentConfig& config) {
  DisturbanceSample out;
  const double t = in.t + config.epoch_offset;
  const InertialState dep = deputy_inertial(in.chief, in.frame, in.rel);
  const double m = in.deputy_mass;

  // Inertial-frame differential force on the deputy.
  Vector3 force = Vector3::Zero();
  // Surface forces on the deputy (for the torque model), inertial.
  Vector3 surface_force = Vector3::Zero();

  if (config.j2) force += m * (j2_accel(dep.r) - j2_accel(in.chief.r));

  Vector3 sun_dir = Vector3::UnitX();
  if (config.third_body || config.srp) sun_dir = sun_vector(t);

  if (config.third_body) {
    const Vector3 sun = sun_position(t);
    const Vector3 moon = moon_position(t);
    force += m * (third_body_accel(dep.r, sun, kMuSun) - third_body_accel(in.chief.r, sun, kMuSun));
    force += m * (third_body_accel(dep.r, moon, kMuMoon) - third_body_accel(in.chief.r, moon, kMuMoon));
  }
  if (config.drag) {
    const Vector3 fd = drag_force(dep.r, dep.v, config.deputy_drag_area,
                                  config.deputy_drag_coefficient, config);
    const Vector3 fc = drag_force(in.chief.r, in.chief.v, config.chief.drag_area,
                                  config.chief.drag_coefficient, config);
    surface_force += fd;
    force += fd - m * fc / config.chief.mass;
  }
  if (config.srp) {
    const Vector3 fd = srp_force(sun_dir, config.deputy_srp_area, config.deputy_reflectivity,
                                 in_shadow(dep.r, sun_dir));
    const Vector3 fc = srp_force(sun_dir, config.chief.srp_area, config.chief.reflectivity,
                                 in_shadow(in.chief.r, sun_dir));
    surface_force += fd;
    force += fd - m * fc / config.chief.mass;
  }

  out.d_orb = in.frame.lvlh_to_inertial.matrix().transpose() * force;

  Vector3 torque = Vector3::Zero();
  if (config.gravity_gradient) torque += gravity_gradient_torque(in.q, dep.r, in.inertia);
  if (config.magnetic) {
    const double greenwich = config.greenwich_angle_at_epoch + kEarthRotationRate * t;
    torque += magnetic_torque(in.q, dep.r,
                              config.dipole_magnitude * config.dipole_direction.normalized(),
                              greenwich);
  }
  if (config.drag || config.srp) {
    torque += config.cp_offset.cross(quat_to_dcm(in.q) * surface_force);
  }
  out.d_att = torque;

  if (out.d_orb.norm() > config.force_cap) {
    out.d_orb *= config.force_cap / out.d_orb.norm();
    out.force_clamped = true;
  }
  if (out.d_att.norm() > config.torque_cap) {
    out.d_att *= config.torque_cap / out.d_att.norm();
    out.torque_clamped = true;
  }
  return out;
}

}  // namespace ffsim
