#pragma once

#include "ffsim/attitude_dynamics.hpp"
#include "ffsim/frames.hpp"
#include "ffsim/orbit_dynamics.hpp"

namespace ffsim {

struct BallisticProperties {
  double mass = 1.0;           // kg
  double drag_area = 0.01;     // m^2
  double drag_coefficient = 2.2;
  double srp_area = 0.01;      // m^2
  double reflectivity = 1.3;   // C_r
};

struct EnvironmentConfig {
  bool j2 = true;
  bool third_body = true;
  bool drag = true;
  bool srp = true;
  bool gravity_gradient = true;
  bool magnetic = true;

  // Exponential atmosphere
  double density_ref = 1.80e-13;     // kg/m^3 at altitude_ref
  double altitude_ref = 550e3;       // m
  double scale_height = 70e3;        // m

  // Deputy (occulter) surfaces; mass comes from the mass model.
  double deputy_drag_area = 0.02;
  double deputy_drag_coefficient = 2.2;
  double deputy_srp_area = 0.02;
  double deputy_reflectivity = 1.3;
  /// Center-of-pressure offset from the center of mass, body frame (m).
  Vector3 cp_offset = Vector3(0.02, 0.0, 0.0);

  BallisticProperties chief{1.33, 0.01, 2.2, 0.01, 1.3};

  double dipole_magnitude = 1e-3;           // A m^2
  Vector3 dipole_direction = Vector3::UnitX();  // unit, body frame (sampled per run)

  /// Seconds since the vernal-equinox epoch at simulation start.
  double epoch_offset = 0.0;
  /// Greenwich angle at the epoch (rad), drives the rotating dipole.
  double greenwich_angle_at_epoch = 0.0;

  // Magnitude caps used for the bounded-disturbance assumption.
  double force_cap = 1e-5;     // N
  double torque_cap = 1e-5;    // N m

  void validate() const;
  EnvironmentConfig all_disabled() const;
};

struct DisturbanceSample {
  Vector3 d_orb = Vector3::Zero();  // N, LVLH
  Vector3 d_att = Vector3::Zero();  // N m, body
  bool force_clamped = false;
  bool torque_clamped = false;
};

/// Unit vector from Earth to Sun, inertial, `t` seconds after the vernal
/// equinox (circular ecliptic model).
Vector3 sun_vector(double t);
/// Sun position (m), inertial.
Vector3 sun_position(double t);
/// Moon position (m), inertial, circular inclined orbit.
Vector3 moon_position(double t);

Vector3 gravity_gradient_torque(const UnitQuaternion& q, const Vector3& r_inertial,
                                const Matrix3& inertia);

/// Tilted-dipole field (T), inertial coordinates.
Vector3 magnetic_field(const Vector3& r_inertial, double greenwich_angle);

Vector3 magnetic_torque(const UnitQuaternion& q, const Vector3& r_inertial,
                        const Vector3& dipole_body, double greenwich_angle);

double atmospheric_density(double altitude, const EnvironmentConfig& config);

/// Drag force (N) for given area, coefficient; velocity relative to a
/// co-rotating atmosphere.
Vector3 drag_force(const Vector3& r_inertial, const Vector3& v_inertial, double area,
                   double drag_coefficient, const EnvironmentConfig& config);

Vector3 srp_force(const Vector3& sun_dir, double area, double reflectivity, bool in_shadow);

/// Cylindrical Earth shadow test.
bool in_shadow(const Vector3& r_inertial, const Vector3& sun_dir);

Vector3 third_body_accel(const Vector3& r_sat, const Vector3& r_body, double mu_body);

Vector3 j2_accel(const Vector3& r_inertial);

struct DisturbanceInputs {
  double t = 0.0;  // s since simulation start
  ChiefState chief;
  LvlhFrame frame;
  RelativeState rel;
  UnitQuaternion q;
  Matrix3 inertia;
  double deputy_mass = 1.0;
};

DisturbanceSample assemble_disturbances(const DisturbanceInputs& in, const EnvironmentConfig& config);

}  // namespace ffsim
