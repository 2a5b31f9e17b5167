#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffsim/actuators.hpp"
#include "ffsim/attitude_dynamics.hpp"
#include "ffsim/baselines.hpp"
#include "ffsim/environment.hpp"
#include "ffsim/orbit_dynamics.hpp"
#include "ffsim/sliding_mode.hpp"

namespace ffsim {

enum class ControllerKind { kNftsm, kPd, kLqr };

std::string to_string(ControllerKind kind);
/// Accepts "nftsm", "pd", "lqr" (case-insensitive).
ControllerKind parse_controller_kind(const std::string& name);

/// Raised for invalid configurations; the message lists every violation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a run breaks a runtime invariant (e.g. the gain floor).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Circular chief orbit. Angles in degrees.
struct ChiefOrbit {
  double altitude = 550e3;  // m
  double inclination_deg = 97.6;
  double raan_deg = -15.0;
  double arg_latitude_deg = 0.0;
};

struct InitialConditions {
  Vector3 position_error = Vector3(5.0, -5.0, 3.0);  // m, LVLH, relative to the reference point
  Vector3 velocity_error = Vector3::Zero();          // m/s
  Vector3 attitude_axis = Vector3(1.0, 1.0, 1.0);    // offset from the reference attitude
  double attitude_angle_deg = 60.0;
  Vector3 omega = Vector3::Zero();                   // rad/s, body
  Vector3 h_wheel = Vector3::Zero();                 // N m s, body
};

struct ControllerConfig {
  ControllerKind orbit = ControllerKind::kNftsm;
  ControllerKind attitude = ControllerKind::kNftsm;
  AdaptiveTuning orbit_nftsm = default_orbit_tuning();
  AdaptiveTuning attitude_nftsm = default_attitude_tuning();
  PdGains orbit_pd = kDefaultOrbitPd;
  PdGains attitude_pd = kDefaultAttitudePd;
  LqrWeights orbit_lqr = default_orbit_lqr_weights();
  LqrWeights attitude_lqr = default_attitude_lqr_weights();
  /// Body-z demand (N) below which the tilt branch is kept.
  double branch_deadband = 1e-5;
  /// Sanity ceilings on the adaptive gains over a run.
  double gain_ceiling_orbit = 1.0;
  double gain_ceiling_attitude = 1.0;
};

struct UncertaintyConfig {
  bool sample_mass = true;
  bool sample_inertia = true;
  bool random_dipole = true;
};

struct SimulationConfig {
  double duration = 3600.0;  // s
  double dt = 0.01;          // s
  double ts_orb = 5.0;       // s
  ChiefOrbit chief;
  InitialConditions initial;
  ControllerConfig control;
  ActuatorSpec actuator;
  MassModel mass;
  InertiaModel inertia;
  WheelModel wheel;
  EnvironmentConfig environment;
  UncertaintyConfig uncertainty;
  std::uint64_t seed = 1;
  /// Keep per-step records in memory. Metrics are computed either way.
  bool record_log = true;

  std::vector<std::string> validation_errors() const;
  /// Throws ConfigError listing all violations.
  void validate() const;

  long steps() const;
  long steps_per_hold() const;
};

/// Per-run realization of the uncertain parameters.
struct UncertaintyDraw {
  std::uint64_t seed = 0;
  double mass_delta = 0.0;
  Matrix3 inertia_delta = Matrix3::Zero();
  Vector3 dipole_direction = Vector3::UnitX();
  int draw_count = 0;
};

UncertaintyDraw sample_uncertainty(const SimulationConfig& config);

struct LogRecord {
  double t = 0.0;
  Vector3 r_error;      // m, LVLH
  Vector3 v_error;      // m/s, LVLH
  UnitQuaternion q_error;
  Vector3 omega_error;  // rad/s, body
  Vector3 s_orb;
  Vector3 s_att;
  double k_orb = 0.0;
  double k_orb_dot = 0.0;
  double k_att = 0.0;
  double k_att_dot = 0.0;
  Vector3 u_orb_cmd_lvlh;     // ROCS command (held), N
  Vector3 u_orb_cmd_body;     // same, reference body frame
  Vector3 u_fired_body;       // after the thrust actuator
  Vector3 u_fired_lvlh;       // fired thrust through the actual attitude
  Vector3 tau_cmd;            // N m
  Vector3 tau;                // after the wheel actuator
  Vector3 d_orb;              // N, LVLH
  Vector3 d_att;              // N m, body
  int tilt_sign = 1;
  double quat_norm_pre = 1.0;  // quaternion norm before renormalization
};

struct SimulationLog {
  double dt = 0.0;
  double ts_orb = 0.0;
  ControllerKind orbit_controller = ControllerKind::kNftsm;
  ControllerKind attitude_controller = ControllerKind::kNftsm;
  double epsilon_orb = 0.0;
  double epsilon_att = 0.0;
  double k0_orb = 0.0;
  double k0_att = 0.0;
  UncertaintyDraw draw;
  std::vector<LogRecord> records;
};

struct Metrics {
  double duration = 0.0;
  double aligned_time = 0.0;   // s with |r_e| <= 3 m
  double fuel = 0.0;           // N s
  double first_position_convergence = -1.0;  // s, -1 if never
  double first_s_orb_convergence = -1.0;     // s, -1 if never
  double position_hold_fraction = 0.0;  // after first convergence
  double s_orb_hold_fraction = 0.0;
  double pointing_time = 0.0;  // s with attitude error <= 3 deg
  int switch_count = 0;        // tilt-branch changes
  long gain_floor_violations = 0;
  double k_orb_max = 0.0;
  double k_att_max = 0.0;
  bool gains_bounded = true;
  long force_clamps = 0;
  long torque_clamps = 0;
};

/// Streaming metric computation shared by the simulator and compute_metrics.
class MetricsAccumulator {
 public:
  MetricsAccumulator(double dt, double epsilon_orb, bool orbit_adaptive, double k0_orb,
                     bool attitude_adaptive, double k0_att);

  /// `integrate` is false for the final sample, which closes the run.
  void add(const LogRecord& rec, bool integrate);
  Metrics finish(double duration, double ceiling_orb, double ceiling_att) const;

 private:
  double dt_;
  double eps_orb_;
  bool orb_adaptive_;
  double k0_orb_;
  bool att_adaptive_;
  double k0_att_;
  Metrics m_;
  double pos_hold_after_ = 0.0;
  double s_hold_after_ = 0.0;
  double span_after_pos_ = 0.0;
  double span_after_s_ = 0.0;
  int last_sign_ = 0;
};

Metrics compute_metrics(const SimulationLog& log, double gain_ceiling_orbit = 1.0,
                        double gain_ceiling_attitude = 1.0);

struct SimulationResult {
  SimulationLog log;
  Metrics metrics;
};

SimulationResult run_closed_loop(const SimulationConfig& config);

/// Initial chief state of a configuration.
ChiefState initial_chief(const SimulationConfig& config);

/// For each axis, every maximal interval with |s_i| <= epsilon lasting at
/// least `min_dwell` must end with |e_i| <= bound_i + tol.
struct DwellCheck {
  long dwells = 0;
  long violations = 0;
  double worst_excess = 0.0;
};
DwellCheck check_orbit_dwell_bound(const SimulationLog& log, const Vector3& bound,
                                   double min_dwell, double tol);
DwellCheck check_attitude_dwell_bound(const SimulationLog& log, const Vector3& bound,
                                      double min_dwell, double tol);

}  // namespace ffsim
