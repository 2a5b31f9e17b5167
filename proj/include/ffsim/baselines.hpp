#pragma once

#include <Eigen/Dense>

#include "ffsim/frames.hpp"

namespace ffsim {

/// u = -Kp e - Kd e_dot
Vector3 pd_control(const Vector3& e, const Vector3& e_dot, double kp, double kd);

struct PdGains {
  double kp = 0.0;
  double kd = 0.0;
};

inline constexpr PdGains kDefaultOrbitPd{6.39e-5, 1.45e-3};
inline constexpr PdGains kDefaultAttitudePd{2.00e-4, 3.00e-3};

/// State-feedback gain R^-1 B' P from the stabilizing CARE solution.
/// Throws RiccatiError for non-stabilizable pairs.
Eigen::MatrixXd lqr_gain(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                         const Eigen::MatrixXd& q, const Eigen::MatrixXd& r);

struct LinearPlant {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

/// Hill-Clohessy-Wiltshire plant about a circular chief with mean motion n.
/// State [r; v] in LVLH (x radial, y along-track, z cross-track), input force.
LinearPlant hcw_plant(double mean_motion, double mass);

/// Small-angle attitude plant: qv_dot = omega / 2, J omega_dot = u.
LinearPlant attitude_plant(const Matrix3& inertia);

using Vector6d = Eigen::Matrix<double, 6, 1>;

struct LqrWeights {
  Vector6d q_diag;
  Vector3 r_diag;
};

LqrWeights default_orbit_lqr_weights();
LqrWeights default_attitude_lqr_weights();

/// u = -K [e; e_dot] with a 3x6 gain.
class LinearFeedback {
 public:
  LinearFeedback() = default;
  explicit LinearFeedback(const Eigen::Matrix<double, 3, 6>& gain) : gain_(gain) {}

  static LinearFeedback from_pd(const PdGains& gains);
  static LinearFeedback from_lqr(const LinearPlant& plant, const LqrWeights& weights);

  Vector3 command(const Vector3& e, const Vector3& e_dot) const;
  const Eigen::Matrix<double, 3, 6>& gain() const { return gain_; }

 private:
  Eigen::Matrix<double, 3, 6> gain_ = Eigen::Matrix<double, 3, 6>::Zero();
};

}  // namespace ffsim
