#include <algorithm>
#include <stdexcept>

#include "ffsim/attitude_dynamics.hpp"
#include "ffsim/guidance.hpp"
#include "ffsim/simulation.hpp"

namespace ffsim {

MetricsAccumulator::MetricsAccumulator(double dt, double epsilon_orb, bool orbit_adaptive,
                                       double k0_orb, bool attitude_adaptive, double k0_att)
    : dt_(dt),
      eps_orb_(epsilon_orb),
      orb_adaptive_(orbit_adaptive),
      k0_orb_(k0_orb),
      att_adaptive_(attitude_adaptive),
      k0_att_(k0_att) {}

void MetricsAccumulator::add(const LogRecord& rec, bool integrate) {
  const bool pos_ok = rec.r_error.norm() <= kPositionRequirement;
  const bool s_ok = rec.s_orb.norm() <= eps_orb_;

  if (m_.first_position_convergence < 0.0 && pos_ok) m_.first_position_convergence = rec.t;
  if (m_.first_s_orb_convergence < 0.0 && s_ok) m_.first_s_orb_convergence = rec.t;

  if (last_sign_ != 0 && rec.tilt_sign != last_sign_) ++m_.switch_count;
  last_sign_ = rec.tilt_sign;

  if (orb_adaptive_) {
    if (rec.k_orb < k0_orb_) ++m_.gain_floor_violations;
    m_.k_orb_max = std::max(m_.k_orb_max, rec.k_orb);
  }
  if (att_adaptive_) {
    if (rec.k_att < k0_att_) ++m_.gain_floor_violations;
    m_.k_att_max = std::max(m_.k_att_max, rec.k_att);
  }

  if (!integrate) return;
  if (pos_ok) m_.aligned_time += dt_;
  if (rotation_angle(rec.q_error) <= kPointingRequirement) m_.pointing_time += dt_;
  m_.fuel += rec.u_fired_body.norm() * dt_;
  if (m_.first_position_convergence >= 0.0) {
    span_after_pos_ += dt_;
    if (pos_ok) pos_hold_after_ += dt_;
  }
  if (m_.first_s_orb_convergence >= 0.0) {
    span_after_s_ += dt_;
    if (s_ok) s_hold_after_ += dt_;
  }
}

Metrics MetricsAccumulator::finish(double duration, double ceiling_orb, double ceiling_att) const {
  Metrics m = m_;
  m.duration = duration;
  m.position_hold_fraction = span_after_pos_ > 0.0 ? pos_hold_after_ / span_after_pos_ : 0.0;
  m.s_orb_hold_fraction = span_after_s_ > 0.0 ? s_hold_after_ / span_after_s_ : 0.0;
  m.gains_bounded = m.k_orb_max <= ceiling_orb && m.k_att_max <= ceiling_att;
  return m;
}

Metrics compute_metrics(const SimulationLog& log, double gain_ceiling_orbit,
                        double gain_ceiling_attitude) {
  if (log.records.empty()) throw std::invalid_argument("compute_metrics: empty log");
  MetricsAccumulator acc(log.dt, log.epsilon_orb, log.orbit_controller == ControllerKind::kNftsm,
                         log.k0_orb, log.attitude_controller == ControllerKind::kNftsm, log.k0_att);
  const std::size_t n = log.records.size();
  for (std::size_t i = 0; i < n; ++i) acc.add(log.records[i], i + 1 < n);
  return acc.finish(log.records.back().t - log.records.front().t, gain_ceiling_orbit,
                    gain_ceiling_attitude);
}

}  // namespace ffsim
