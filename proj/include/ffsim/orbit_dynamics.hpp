#pragma once

#include "ffsim/frames.hpp"

namespace ffsim {

/// Inertial chief state. Angular rate and acceleration are derived.
struct ChiefState {
  Vector3 r = Vector3::Zero();  // m
  Vector3 v = Vector3::Zero();  // m/s

  LvlhFrame lvlh() const { return eci_to_lvlh(r, v); }
};

struct ChiefDerivative {
  Vector3 r_dot;
  Vector3 v_dot;
};

/// Deputy position/velocity relative to the chief, in LVLH coordinates.
struct RelativeState {
  Vector3 r = Vector3::Zero();  // m
  Vector3 v = Vector3::Zero();  // m/s
};

/// Reference point of the deputy in LVLH, with its first two derivatives.
struct ReferenceState {
  Vector3 r = Vector3::Zero();
  Vector3 v = Vector3::Zero();
  Vector3 a = Vector3::Zero();
};

struct MassModel {
  double nominal = 2.4;        // kg
  double delta_bound = 0.10;   // fractional
  double delta = 0.0;          // sampled offset, kg

  double actual() const { return nominal + delta; }
  /// Throws std::invalid_argument if the sampled mass violates its bounds.
  void validate() const;
};

/// Terms of the LVLH relative equations of motion evaluated at one state.
struct RelativeDynamicsTerms {
  Matrix3 a1;      // position coupling
  Matrix3 a2;      // velocity (Coriolis) coupling
  Vector3 f;       // Keplerian nonlinearity
  double r_d = 0;  // deputy distance from Earth's center
};

/// Circular orbit of radius `radius` (m) with inclination, RAAN and argument
/// of latitude in radians.
ChiefState circular_chief(double radius, double inclination, double raan, double arg_latitude);

/// Two-body acceleration plus an additive perturbing acceleration.
ChiefDerivative chief_derivative(const ChiefState& chief, const Vector3& perturbation = Vector3::Zero());

RelativeDynamicsTerms relative_terms(const ChiefState& chief, const LvlhFrame& frame,
                                     const Vector3& r_rel);

/// Relative acceleration in LVLH. Force inputs `u` and `d` are in newtons
/// and LVLH coordinates; `mass` is the actual deputy mass.
Vector3 relative_accel(const ChiefState& chief, const RelativeState& rel, const Vector3& u,
                       const Vector3& d, double mass);

/// Overload taking a precomputed LVLH frame (hot path in the simulator).
Vector3 relative_accel(const ChiefState& chief, const LvlhFrame& frame, const RelativeState& rel,
                       const Vector3& u, const Vector3& d, double mass);

/// Second derivative of the tracking error r_e = r - r_r.
Vector3 orbit_error_derivative(const ChiefState& chief, const RelativeState& error,
                               const ReferenceState& reference, const Vector3& u,
                               const Vector3& d, double mass);

/// Deputy inertial position/velocity from chief state and relative state.
struct InertialState {
  Vector3 r;
  Vector3 v;
};
InertialState deputy_inertial(const ChiefState& chief, const LvlhFrame& frame,
                              const RelativeState& rel);
RelativeState relative_from_inertial(const ChiefState& chief, const InertialState& deputy);

}  // namespace ffsim
