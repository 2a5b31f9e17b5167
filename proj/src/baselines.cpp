#include "ffsim/baselines.hpp"

#include <stdexcept>

#include "ffsim/riccati.hpp"

namespace ffsim {

Vector3 pd_control(const Vector3& e, const Vector3& e_dot, double kp, double kd) {
  return -kp * e - kd * e_dot;
}

Eigen::MatrixXd lqr_gain(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                         const Eigen::MatrixXd& q, const Eigen::MatrixXd& r) {
  return solve_care(a, b, q, r).gain;
}

LinearPlant hcw_plant(double mean_motion, double mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("plant mass must be positive");
  const double n2 = mean_motion * mean_motion;
  LinearPlant p;
  p.a = Eigen::MatrixXd::Zero(6, 6);
  p.a.topRightCorner(3, 3).setIdentity();
  p.a(3, 0) = 3.0 * n2;
  p.a(5, 2) = -n2;
  p.a(3, 4) = 2.0 * mean_motion;
  p.a(4, 3) = -2.0 * mean_motion;
  p.b = Eigen::MatrixXd::Zero(6, 3);
  p.b.bottomRows(3) = Eigen::MatrixXd::Identity(3, 3) / mass;
  return p;
}

LinearPlant attitude_plant(const Matrix3& inertia) {
  LinearPlant p;
  p.a = Eigen::MatrixXd::Zero(6, 6);
  p.a.topRightCorner(3, 3) = 0.5 * Eigen::MatrixXd::Identity(3, 3);
  p.b = Eigen::MatrixXd::Zero(6, 3);
  p.b.bottomRows(3) = inertia.inverse();
  return p;
}

LqrWeights default_orbit_lqr_weights() {
  LqrWeights w;
  w.q_diag << 0.639, 0.383, 0.527, 1.25e-3, 1.25e-3, 1.25e-3;
  w.r_diag = Vector3::Constant(3.47e5);
  return w;
}

LqrWeights default_attitude_lqr_weights() {
  LqrWeights w;
  w.q_diag << 3e-7, 3e-7, 3e-7, 3e-4, 3e-4, 3e-4;
  w.r_diag = Vector3::Constant(1.16e4);
  return w;
}

LinearFeedback LinearFeedback::from_pd(const PdGains& gains) {
  Eigen::Matrix<double, 3, 6> k;
  k << gains.kp * Matrix3::Identity(), gains.kd * Matrix3::Identity();
  return LinearFeedback(k);
}

LinearFeedback LinearFeedback::from_lqr(const LinearPlant& plant, const LqrWeights& weights) {
  const Eigen::MatrixXd q = weights.q_diag.asDiagonal();
  const Eigen::MatrixXd r = weights.r_diag.asDiagonal();
  const Eigen::MatrixXd k = lqr_gain(plant.a, plant.b, q, r);
  return LinearFeedback(k);
}

Vector3 LinearFeedback::command(const Vector3& e, const Vector3& e_dot) const {
  return -gain_.leftCols<3>() * e - gain_.rightCols<3>() * e_dot;
}

}  // namespace ffsim
