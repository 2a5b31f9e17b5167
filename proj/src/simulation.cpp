#include "ffsim/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <sstream>

#include "ffsim/constants.hpp"
#include "ffsim/guidance.hpp"
#include "ffsim/integrator.hpp"

namespace ffsim {

std::string to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kNftsm: return "nftsm";
    case ControllerKind::kPd: return "pd";
    case ControllerKind::kLqr: return "lqr";
  }
  return "unknown";
}

ControllerKind parse_controller_kind(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "nftsm") return ControllerKind::kNftsm;
  if (lower == "pd") return ControllerKind::kPd;
  if (lower == "lqr") return ControllerKind::kLqr;
  throw ConfigError("unknown controller '" + name + "' (expected nftsm, pd or lqr)");
}

namespace {

bool is_multiple(double value, double unit) {
  const double ratio = value / unit;
  return std::abs(ratio - std::round(ratio)) < 1e-9 * std::max(1.0, std::abs(ratio));
}

template <typename F>
void collect(std::vector<std::string>& errors, const std::string& where, F&& check) {
  try {
    check();
  } catch (const std::exception& e) {
    errors.push_back(where + ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> SimulationConfig::validation_errors() const {
  std::vector<std::string> errors;
  if (!(duration > 0.0)) errors.push_back("duration must be positive");
  if (!(dt > 0.0)) errors.push_back("dt must be positive");
  if (!(ts_orb > 0.0)) errors.push_back("ts_orb must be positive");
  if (dt > 0.0 && ts_orb > 0.0 && !is_multiple(ts_orb, dt)) {
    errors.push_back("ts_orb must be an integer multiple of dt");
  }
  if (ts_orb > 0.0 && duration > 0.0 && !is_multiple(duration, ts_orb)) {
    errors.push_back("duration must be an integer multiple of ts_orb");
  }
  if (!(chief.altitude > 0.0)) errors.push_back("chief.altitude must be positive");
  if (!(initial.attitude_axis.norm() > 0.0)) errors.push_back("initial.attitude_axis must be nonzero");
  collect(errors, "controller.orbit_nftsm", [&] { control.orbit_nftsm.sliding.validate(); });
  collect(errors, "controller.orbit_nftsm", [&] { control.orbit_nftsm.gain.validate(); });
  collect(errors, "controller.attitude_nftsm", [&] { control.attitude_nftsm.sliding.validate(); });
  collect(errors, "controller.attitude_nftsm", [&] { control.attitude_nftsm.gain.validate(); });
  if (control.orbit_nftsm.gain.eta * ts_orb > 1.0) {
    errors.push_back("controller.orbit_nftsm: eta * ts_orb must not exceed 1");
  }
  if (control.attitude_nftsm.gain.eta * dt > 1.0) {
    errors.push_back("controller.attitude_nftsm: eta * dt must not exceed 1");
  }
  if (control.orbit_pd.kp < 0.0 || control.orbit_pd.kd < 0.0 || control.attitude_pd.kp < 0.0 ||
      control.attitude_pd.kd < 0.0) {
    errors.push_back("controller: PD gains must be nonnegative");
  }
  for (const auto* w : {&control.orbit_lqr, &control.attitude_lqr}) {
    if (w->q_diag.minCoeff() < 0.0) errors.push_back("controller: LQR Q must be nonnegative");
    if (!(w->r_diag.minCoeff() > 0.0)) errors.push_back("controller: LQR R must be positive");
  }
  if (control.branch_deadband < 0.0) errors.push_back("controller.branch_deadband must be nonnegative");
  if (!(control.gain_ceiling_orbit > 0.0) || !(control.gain_ceiling_attitude > 0.0)) {
    errors.push_back("controller: gain ceilings must be positive");
  }
  collect(errors, "actuator", [&] { actuator.validate(); });
  collect(errors, "mass", [&] { mass.validate(); });
  if (mass.delta_bound >= 1.0) errors.push_back("mass: uncertainty bound must be below 1");
  collect(errors, "inertia", [&] { inertia.validate(); });
  if (!(wheel.max_torque > 0.0)) errors.push_back("wheel.max_torque must be positive");
  collect(errors, "environment", [&] { environment.validate(); });
  return errors;
}

void SimulationConfig::validate() const {
  const auto errors = validation_errors();
  if (errors.empty()) return;
  std::ostringstream os;
  os << "invalid configuration (" << errors.size() << " problem" << (errors.size() > 1 ? "s" : "")
     << "):";
  for (const auto& e : errors) os << "\n  - " << e;
  throw ConfigError(os.str());
}

long SimulationConfig::steps() const { return std::lround(duration / dt); }
long SimulationConfig::steps_per_hold() const { return std::lround(ts_orb / dt); }

UncertaintyDraw sample_uncertainty(const SimulationConfig& config) {
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * constants::kPi);
  UncertaintyDraw d;
  d.seed = config.seed;
  // Every draw is taken regardless of flags so streams line up across runs.
  const double mass_u = unit(rng);
  double j_u[6];
  for (double& v : j_u) v = unit(rng);
  const double dip_z = unit(rng);
  const double dip_phi = angle(rng);
  d.draw_count = 9;

  if (config.uncertainty.sample_mass) {
    d.mass_delta = mass_u * config.mass.delta_bound * config.mass.nominal;
  }
  if (config.uncertainty.sample_inertia) {
    const Matrix3& j0 = config.inertia.nominal;
    const double b = config.inertia.delta_bound;
    Matrix3 dj = Matrix3::Zero();
    for (int i = 0; i < 3; ++i) dj(i, i) = j_u[i] * b * j0(i, i);
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int k = 0; k < 3; ++k) {
      const int i = pairs[k][0];
      const int j = pairs[k][1];
      dj(i, j) = dj(j, i) = j_u[3 + k] * 0.1 * b * std::sqrt(j0(i, i) * j0(j, j));
    }
    d.inertia_delta = dj;
  }
  if (config.uncertainty.random_dipole) {
    const double rxy = std::sqrt(std::max(0.0, 1.0 - dip_z * dip_z));
    d.dipole_direction = Vector3(rxy * std::cos(dip_phi), rxy * std::sin(dip_phi), dip_z);
  } else {
    d.dipole_direction = config.environment.dipole_direction.normalized();
  }
  return d;
}

ChiefState initial_chief(const SimulationConfig& config) {
  const double d2r = constants::kDegToRad;
  return circular_chief(constants::kEarthRadius + config.chief.altitude,
                        config.chief.inclination_deg * d2r, config.chief.raan_deg * d2r,
                        config.chief.arg_latitude_deg * d2r);
}

namespace {

using StateVector = Eigen::Matrix<double, 22, 1>;

struct Unpacked {
  ChiefState chief;
  RelativeState rel;
  AttitudeState att;
};

Unpacked unpack(const StateVector& x) {
  Unpacked u;
  u.chief.r = x.segment<3>(0);
  u.chief.v = x.segment<3>(3);
  u.rel.r = x.segment<3>(6);
  u.rel.v = x.segment<3>(9);
  u.att.q.qv = x.segment<3>(12);
  u.att.q.q4 = x(15);
  u.att.omega = x.segment<3>(16);
  u.att.h_wheel = x.segment<3>(19);
  return u;
}

StateVector pack(const ChiefState& c, const RelativeState& r, const AttitudeState& a) {
  StateVector x;
  x << c.r, c.v, r.r, r.v, a.q.qv, a.q.q4, a.omega, a.h_wheel;
  return x;
}

UnitQuaternion unit_part(const StateVector& x) {
  return UnitQuaternion::normalized(x.segment<3>(12), x(15));
}

/// Inputs held constant across one integration step.
struct HeldInputs {
  Vector3 thrust_body = Vector3::Zero();
  Vector3 torque = Vector3::Zero();
  Vector3 d_orb = Vector3::Zero();
  Vector3 d_att = Vector3::Zero();
};

class Plant {
 public:
  Plant(double mass, const Matrix3& inertia)
      : mass_(mass), j_(inertia), j_inv_(inertia.inverse()) {}

  StateVector derivative(const StateVector& x, const HeldInputs& in) const {
    const Unpacked s = unpack(x);
    const LvlhFrame frame = s.chief.lvlh();
    const ChiefDerivative cd = chief_derivative(s.chief);
    const RotationMatrix c_ib = quat_to_dcm(unit_part(x));
    const Vector3 thrust_lvlh =
        frame.lvlh_to_inertial.matrix().transpose() * (c_ib.matrix().transpose() * in.thrust_body);
    const Vector3 a_rel = relative_accel(s.chief, frame, s.rel, thrust_lvlh, in.d_orb, mass_);
    const QuaternionRate qd = quat_derivative(s.att.q, s.att.omega);
    const AttitudeRate ad = attitude_derivative(s.att, j_, j_inv_, in.torque, in.d_att);
    StateVector dx;
    dx << cd.r_dot, cd.v_dot, s.rel.v, a_rel, qd.qv_dot, qd.q4_dot, ad.omega_dot, ad.h_wheel_dot;
    return dx;
  }

 private:
  double mass_;
  Matrix3 j_;
  Matrix3 j_inv_;
};

/// One loop's command source: adaptive sliding mode or linear feedback.
class LoopController {
 public:
  LoopController(ControllerKind kind, const AdaptiveTuning& tuning, const LinearFeedback& linear)
      : kind_(kind), adaptive_(tuning), linear_(linear) {}

  struct Command {
    Vector3 u = Vector3::Zero();
    double k = 0.0;
    double k_dot = 0.0;
  };

  Command update(const Vector3& s, const Vector3& e, const Vector3& e_dot, double dt) {
    Command c;
    if (kind_ == ControllerKind::kNftsm) {
      const auto out = adaptive_.update(s, dt);
      c.u = out.u;
      c.k = out.k;
      c.k_dot = out.k_dot;
    } else {
      c.u = linear_.command(e, e_dot);
    }
    return c;
  }

 private:
  ControllerKind kind_;
  AdaptiveSlidingController adaptive_;
  LinearFeedback linear_;
};

LinearFeedback make_linear(ControllerKind kind, const PdGains& pd, const LqrWeights& lqr,
                           const LinearPlant& plant) {
  if (kind == ControllerKind::kPd) return LinearFeedback::from_pd(pd);
  if (kind == ControllerKind::kLqr) return LinearFeedback::from_lqr(plant, lqr);
  return LinearFeedback();
}

}  // namespace

SimulationResult run_closed_loop(const SimulationConfig& config) {
  config.validate();
  const UncertaintyDraw draw = sample_uncertainty(config);

  MassModel mass_model = config.mass;
  mass_model.delta = draw.mass_delta;
  mass_model.validate();
  InertiaModel inertia_model = config.inertia;
  inertia_model.delta = draw.inertia_delta;
  inertia_model.validate();
  const double mass = mass_model.actual();
  const Matrix3 inertia = inertia_model.actual();

  EnvironmentConfig env = config.environment;
  env.dipole_direction = draw.dipole_direction;

  const double epoch = env.epoch_offset;
  const SunModel sun = [epoch](double t) { return sun_position(epoch + t); };

  const double dt = config.dt;
  const double ts = config.ts_orb;
  const long n_steps = config.steps();
  const long hold = config.steps_per_hold();

  ChiefState chief = initial_chief(config);
  const double mean_motion = std::sqrt(constants::kMuEarth / std::pow(chief.r.norm(), 3));

  const ControllerConfig& cc = config.control;
  LoopController orbit_ctrl(
      cc.orbit, cc.orbit_nftsm,
      make_linear(cc.orbit, cc.orbit_pd, cc.orbit_lqr, hcw_plant(mean_motion, config.mass.nominal)));
  LoopController att_ctrl(
      cc.attitude, cc.attitude_nftsm,
      make_linear(cc.attitude, cc.attitude_pd, cc.attitude_lqr, attitude_plant(config.inertia.nominal)));
  const NftsmParams& p_orb = cc.orbit_nftsm.sliding;
  const NftsmParams& p_att = cc.attitude_nftsm.sliding;

  // Initial relative state and attitude are offsets from the reference.
  const ReferenceState ref0 = reference_trajectory(chief, sun, 0.0, dt);
  RelativeState rel{ref0.r + config.initial.position_error, ref0.v + config.initial.velocity_error};
  const LvlhFrame frame0 = chief.lvlh();
  const Vector3 sun_dir0 = (sun(0.0) - chief.r).normalized();
  // The attitude offset is taken from the branch the first hold sample picks;
  // a copy of the controller keeps its adaptive state untouched.
  int tilt_sign = 1;
  {
    LoopController probe = orbit_ctrl;
    const Vector3 e0 = rel.r - ref0.r;
    const Vector3 e0_dot = rel.v - ref0.v;
    const Vector3 u0 = probe.update(sliding_variable_orb(e0, e0_dot, p_orb), e0, e0_dot, ts).u;
    tilt_sign = select_tilt_branch(frame0.lvlh_to_inertial * u0, sun_dir0, frame0.lvlh_to_inertial,
                                   tilt_sign, cc.branch_deadband);
  }
  ReferenceAttitude ref_att = reference_attitude(sun_dir0, frame0.lvlh_to_inertial, tilt_sign);
  AttitudeState att;
  {
    const RotationMatrix offset =
        quat_to_dcm(UnitQuaternion::from_axis_angle(config.initial.attitude_axis,
                                                    config.initial.attitude_angle_deg * constants::kDegToRad));
    att.q = dcm_to_quat(offset * quat_to_dcm(ref_att.q));
    att.omega = config.initial.omega;
    att.h_wheel = config.initial.h_wheel;
  }

  SimulationResult result;
  SimulationLog& log = result.log;
  log.dt = dt;
  log.ts_orb = ts;
  log.orbit_controller = cc.orbit;
  log.attitude_controller = cc.attitude;
  log.epsilon_orb = p_orb.epsilon;
  log.epsilon_att = p_att.epsilon;
  log.k0_orb = cc.orbit_nftsm.gain.k0;
  log.k0_att = cc.attitude_nftsm.gain.k0;
  log.draw = draw;
  if (config.record_log) log.records.reserve(static_cast<std::size_t>(n_steps + 1));

  MetricsAccumulator acc(dt, p_orb.epsilon, cc.orbit == ControllerKind::kNftsm, log.k0_orb,
                         cc.attitude == ControllerKind::kNftsm, log.k0_att);

  const Plant plant(mass, inertia);
  StateVector x = pack(chief, rel, att);

  LoopController::Command orbit_cmd;
  Vector3 u_cmd_body = Vector3::Zero();
  Vector3 u_fired_body = Vector3::Zero();
  double quat_norm_pre = att.q.norm();
  long force_clamps = 0;
  long torque_clamps = 0;

  for (long k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const Unpacked s = unpack(x);
    const LvlhFrame frame = s.chief.lvlh();
    const ReferenceState ref = reference_trajectory(s.chief, sun, t, dt);
    const Vector3 e = s.rel.r - ref.r;
    const Vector3 e_dot = s.rel.v - ref.v;
    const Vector3 s_orb = sliding_variable_orb(e, e_dot, p_orb);

    if (k % hold == 0 && k < n_steps) {
      orbit_cmd = orbit_ctrl.update(s_orb, e, e_dot, ts);
      const Vector3 sun_dir = (sun(t) - s.chief.r).normalized();
      const Vector3 demand_inertial = frame.lvlh_to_inertial * orbit_cmd.u;
      tilt_sign = select_tilt_branch(demand_inertial, sun_dir, frame.lvlh_to_inertial, tilt_sign,
                                     cc.branch_deadband);
      ref_att = reference_attitude(sun_dir, frame.lvlh_to_inertial, tilt_sign);
      u_cmd_body = quat_to_dcm(ref_att.q) * demand_inertial;
      u_fired_body = thrust_actuator(u_cmd_body, config.actuator);
    }

    const UnitQuaternion q_e = error_quaternion(s.att.q, ref_att.q);
    const Vector3 omega_e = error_rate(s.att.omega, ref_att.omega, q_e);
    const Vector3 s_att = sliding_variable_att(q_e.qv, omega_e, p_att);
    const LoopController::Command att_cmd = att_ctrl.update(s_att, q_e.qv, omega_e, dt);
    const Vector3 tau = wheel_actuator(att_cmd.u, config.actuator).cwiseMax(-config.wheel.max_torque)
                            .cwiseMin(config.wheel.max_torque);

    DisturbanceInputs din;
    din.t = t;
    din.chief = s.chief;
    din.frame = frame;
    din.rel = s.rel;
    din.q = s.att.q;
    din.inertia = inertia;
    din.deputy_mass = mass;
    const DisturbanceSample dist = assemble_disturbances(din, env);
    force_clamps += dist.force_clamped ? 1 : 0;
    torque_clamps += dist.torque_clamped ? 1 : 0;

    LogRecord rec;
    rec.t = t;
    rec.r_error = e;
    rec.v_error = e_dot;
    rec.q_error = q_e;
    rec.omega_error = omega_e;
    rec.s_orb = s_orb;
    rec.s_att = s_att;
    rec.k_orb = orbit_cmd.k;
    rec.k_orb_dot = orbit_cmd.k_dot;
    rec.k_att = att_cmd.k;
    rec.k_att_dot = att_cmd.k_dot;
    rec.u_orb_cmd_lvlh = orbit_cmd.u;
    rec.u_orb_cmd_body = u_cmd_body;
    rec.u_fired_body = u_fired_body;
    rec.u_fired_lvlh = frame.lvlh_to_inertial.matrix().transpose() *
                       (quat_to_dcm(s.att.q).matrix().transpose() * u_fired_body);
    rec.tau_cmd = att_cmd.u;
    rec.tau = tau;
    rec.d_orb = dist.d_orb;
    rec.d_att = dist.d_att;
    rec.tilt_sign = tilt_sign;
    rec.quat_norm_pre = quat_norm_pre;

    acc.add(rec, k < n_steps);
    if (config.record_log) log.records.push_back(rec);
    if (k == n_steps) break;

    const HeldInputs held{u_fired_body, tau, dist.d_orb, dist.d_att};
    x = integrate_step(
        x, [&](double, const StateVector& xs) { return plant.derivative(xs, held); }, t, dt);
    quat_norm_pre = std::sqrt(x.segment<4>(12).squaredNorm());
    x.segment<4>(12) /= quat_norm_pre;
  }

  result.metrics = acc.finish(config.duration, cc.gain_ceiling_orbit, cc.gain_ceiling_attitude);
  result.metrics.force_clamps = force_clamps;
  result.metrics.torque_clamps = torque_clamps;
  if (result.metrics.gain_floor_violations > 0) {
    throw InvariantViolation("adaptive gain dropped below its floor in " +
                             std::to_string(result.metrics.gain_floor_violations) + " samples");
  }
  return result;
}

namespace {

DwellCheck dwell_check(const SimulationLog& log, const Vector3& bound, double epsilon,
                       double min_dwell, double tol, bool orbit) {
  DwellCheck out;
  const auto& recs = log.records;
  for (int axis = 0; axis < 3; ++axis) {
    long start = -1;
    for (std::size_t i = 0; i <= recs.size(); ++i) {
      const bool inside = i < recs.size() &&
                          std::abs(orbit ? recs[i].s_orb[axis] : recs[i].s_att[axis]) <= epsilon;
      if (inside) {
        if (start < 0) start = static_cast<long>(i);
        continue;
      }
      if (start >= 0) {
        const auto& last = recs[i - 1];
        if (last.t - recs[static_cast<std::size_t>(start)].t >= min_dwell) {
          ++out.dwells;
          const double err = std::abs(orbit ? last.r_error[axis] : last.q_error.qv[axis]);
          const double excess = err - bound[axis];
          out.worst_excess = std::max(out.worst_excess, excess);
          if (excess > tol) ++out.violations;
        }
        start = -1;
      }
    }
  }
  return out;
}

}  // namespace

DwellCheck check_orbit_dwell_bound(const SimulationLog& log, const Vector3& bound,
                                   double min_dwell, double tol) {
  return dwell_check(log, bound, log.epsilon_orb, min_dwell, tol, true);
}

DwellCheck check_attitude_dwell_bound(const SimulationLog& log, const Vector3& bound,
                                      double min_dwell, double tol) {
  return dwell_check(log, bound, log.epsilon_att, min_dwell, tol, false);
}

}  // namespace ffsim
