#include "ffsim/sliding_mode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffsim {

void NftsmParams::validate() const {
  if (!(rho > 1.0 && rho < 2.0)) throw std::invalid_argument("rho out of (1,2)");
  if (!(alpha.minCoeff() > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(beta.minCoeff() > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

void AdaptiveGainState::validate() const {
  if (!(k0 > 0.0)) throw std::invalid_argument("K0 must be positive");
  if (!(k >= k0)) throw std::invalid_argument("K(0) must be at least K0");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
}

AdaptiveTuning default_orbit_tuning() {
  return {NftsmParams{1.9, Vector3::Constant(7e-3), Vector3::Constant(7e-3), 1.2e-2},
          AdaptiveGainState{3e-5, 1e-8, 4.5e-4}};
}

AdaptiveTuning default_attitude_tuning() {
  return {NftsmParams{1.1, Vector3::Constant(1.44), Vector3::Constant(1.44), 6e-2},
          AdaptiveGainState{2e-4, 2e-7, 5e-2}};
}

namespace {

Vector3 nftsm(const Vector3& e, const Vector3& e_dot, const NftsmParams& p) {
  return e_dot + p.alpha.cwiseProduct(sig_pow(e, p.rho)) + p.beta.cwiseProduct(e);
}

}  // namespace

Vector3 sliding_variable_orb(const Vector3& r_error, const Vector3& v_error, const NftsmParams& p) {
  return nftsm(r_error, v_error, p);
}

Vector3 sliding_variable_att(const Vector3& qv_error, const Vector3& omega_error,
                             const NftsmParams& p) {
  return nftsm(qv_error, omega_error, p);
}

Vector3 adaptive_smooth_control(const Vector3& s, const AdaptiveGainState& gain, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return -(gain.k / epsilon) * s;
}

double adaptive_gain_rate(const AdaptiveGainState& gain, const Vector3& u) {
  return gain.eta * (u.norm() - gain.k + gain.k0);
}

double adaptive_gain_rate_from_sliding(const AdaptiveGainState& gain, const Vector3& s,
                                       double epsilon) {
  return gain.eta * gain.k * ((-s / epsilon).norm() - (1.0 - gain.k0 / gain.k));
}

AdaptiveGainState adaptive_gain_step(const AdaptiveGainState& gain, const Vector3& u, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("gain step must be positive");
  if (gain.eta * dt > 1.0) throw std::invalid_argument("eta * dt must not exceed 1");
  AdaptiveGainState next = gain;
  next.k = std::max(gain.k + dt * adaptive_gain_rate(gain, u), gain.k0);
  return next;
}

AdaptiveSlidingController::AdaptiveSlidingController(const AdaptiveTuning& tuning)
    : tuning_(tuning), gain_(tuning.gain) {
  tuning_.sliding.validate();
  tuning_.gain.validate();
}

AdaptiveSlidingController::Output AdaptiveSlidingController::update(const Vector3& s, double dt) {
  Output out;
  out.s = s;
  out.k = gain_.k;
  out.u = adaptive_smooth_control(s, gain_, tuning_.sliding.epsilon);
  out.k_dot = adaptive_gain_rate(gain_, out.u);
  gain_ = adaptive_gain_step(gain_, out.u, dt);
  return out;
}

}  // namespace ffsim
