#pragma once

#include "ffsim/frames.hpp"

namespace ffsim {

/// Parameters of the nonsingular fast terminal sliding variable
/// s = e_dot + alpha sig^rho(e) + beta e and of the boundary layer.
struct NftsmParams {
  double rho = 1.9;
  Vector3 alpha = Vector3::Constant(7e-3);
  Vector3 beta = Vector3::Constant(7e-3);
  double epsilon = 1.2e-2;

  /// Throws std::invalid_argument naming the violated invariant.
  void validate() const;
};

/// Adaptive gain K(t) with floor K0 and rate eta.
struct AdaptiveGainState {
  double k = 3e-5;
  double k0 = 1e-8;
  double eta = 4.5e-4;

  void validate() const;
};

struct AdaptiveTuning {
  NftsmParams sliding;
  AdaptiveGainState gain;
};

/// Defaults for the relative-orbit loop (force in N, errors in m).
AdaptiveTuning default_orbit_tuning();
/// Defaults for the attitude loop (torque in N m, quaternion error).
AdaptiveTuning default_attitude_tuning();

Vector3 sliding_variable_orb(const Vector3& r_error, const Vector3& v_error, const NftsmParams& p);
Vector3 sliding_variable_att(const Vector3& qv_error, const Vector3& omega_error,
                             const NftsmParams& p);

/// u = -(K / epsilon) s
Vector3 adaptive_smooth_control(const Vector3& s, const AdaptiveGainState& gain, double epsilon);

/// K_dot = eta (|u| - K + K0)
double adaptive_gain_rate(const AdaptiveGainState& gain, const Vector3& u);

/// Same rate written in terms of the sliding variable:
/// K_dot = eta K (|s| / epsilon - (1 - K0 / K)).
double adaptive_gain_rate_from_sliding(const AdaptiveGainState& gain, const Vector3& s,
                                       double epsilon);

/// Explicit Euler step of the adaptation law, floored at K0. Throws on a
/// non-positive step or if eta * dt exceeds one.
AdaptiveGainState adaptive_gain_step(const AdaptiveGainState& gain, const Vector3& u, double dt);

/// Adaptive NFTSM loop holding its own gain state.
class AdaptiveSlidingController {
 public:
  explicit AdaptiveSlidingController(const AdaptiveTuning& tuning);

  struct Output {
    Vector3 s;
    Vector3 u;
    double k = 0.0;      // gain used for this command
    double k_dot = 0.0;  // adaptation rate at this command
  };

  /// Computes the command from a precomputed sliding variable, then advances
  /// the gain by `dt`.
  Output update(const Vector3& s, double dt);

  const AdaptiveTuning& tuning() const { return tuning_; }
  double gain() const { return gain_.k; }

 private:
  AdaptiveTuning tuning_;
  AdaptiveGainState gain_;
};

}  // namespace ffsim
