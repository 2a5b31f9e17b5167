#include <gtest/gtest.h>

#include <cmath>

#include "ffsim/baselines.hpp"
#include "ffsim/constants.hpp"
#include "ffsim/riccati.hpp"

using namespace ffsim;
using Eigen::MatrixXd;

namespace {

bool strictly_stable(const MatrixXd& m) {
  return (m.eigenvalues().real().array() < 0.0).all();
}

MatrixXd diag(const Eigen::VectorXd& v) { return v.asDiagonal(); }

}  // namespace

TEST(Riccati, ScalarClosedForm) {
  for (double q : {0.1, 1.0, 7.0}) {
    for (double r : {0.01, 1.0, 3.0}) {
      const auto sol = solve_care(MatrixXd::Zero(1, 1), MatrixXd::Ones(1, 1), q * MatrixXd::Ones(1, 1),
                                  r * MatrixXd::Ones(1, 1));
      EXPECT_NEAR(sol.p(0, 0), std::sqrt(q * r), 1e-12 * std::max(1.0, std::sqrt(q * r)));
      EXPECT_NEAR(sol.gain(0, 0), std::sqrt(q / r), 1e-12 * std::max(1.0, std::sqrt(q / r)));
    }
  }
}

TEST(Riccati, DoubleIntegratorIsStabilized) {
  MatrixXd a(2, 2), b(2, 1);
  a << 0, 1, 0, 0;
  b << 0, 1;
  const auto sol = solve_care(a, b, MatrixXd::Identity(2, 2), MatrixXd::Identity(1, 1));
  EXPECT_TRUE(strictly_stable(a - b * sol.gain));
  // Known solution: P = [[sqrt(3), 1], [1, sqrt(3)]].
  EXPECT_NEAR(sol.p(0, 0), std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(sol.p(0, 1), 1.0, 1e-12);
  EXPECT_NEAR(sol.p(1, 1), std::sqrt(3.0), 1e-12);
  EXPECT_LT(sol.residual, 1e-12);
}

TEST(Riccati, HillPlantResidualAndStability) {
  const double n = std::sqrt(constants::kMuEarth / std::pow(constants::kEarthRadius + 550e3, 3));
  const LinearPlant plant = hcw_plant(n, 2.4);
  const LqrWeights w = default_orbit_lqr_weights();
  const auto sol = solve_care(plant.a, plant.b, diag(w.q_diag), diag(w.r_diag));
  EXPECT_LT(sol.residual, 1e-8);
  EXPECT_LT(care_residual(plant.a, plant.b, diag(w.q_diag), diag(w.r_diag), sol.p), 1e-8);
  EXPECT_TRUE(strictly_stable(plant.a - plant.b * sol.gain));
  EXPECT_LT((sol.p - sol.p.transpose()).cwiseAbs().maxCoeff(), 1e-20);
}

TEST(Riccati, AttitudePlantResidualAndStability) {
  const Matrix3 j = Vector3(8.33e-3, 8.33e-3, 3.33e-3).asDiagonal();
  const LinearPlant plant = attitude_plant(j);
  const LqrWeights w = default_attitude_lqr_weights();
  const auto sol = solve_care(plant.a, plant.b, diag(w.q_diag), diag(w.r_diag));
  EXPECT_LT(sol.residual, 1e-8);
  EXPECT_TRUE(strictly_stable(plant.a - plant.b * sol.gain));
}

TEST(Riccati, HillPlantStructure) {
  const double n = 1.1e-3;
  const LinearPlant p = hcw_plant(n, 2.0);
  // Linearized relative acceleration at state x with unit force inputs.
  Eigen::Matrix<double, 6, 1> x;
  x << 0.3, -0.2, 0.5, 1e-3, 2e-3, -1e-3;
  const Eigen::Matrix<double, 6, 1> dx = p.a * x;
  EXPECT_NEAR(dx(3), 3 * n * n * x(0) + 2 * n * x(4), 1e-18);
  EXPECT_NEAR(dx(4), -2 * n * x(3), 1e-18);
  EXPECT_NEAR(dx(5), -n * n * x(2), 1e-18);
  EXPECT_NEAR(p.b(3, 0), 0.5, 1e-18);
}

TEST(Riccati, RejectsNonStabilizablePair) {
  MatrixXd a(2, 2), b(2, 1);
  a << 1, 0, 0, -1;
  b << 0, 1;  // unstable mode unreachable
  EXPECT_FALSE(is_stabilizable(a, b));
  EXPECT_THROW(solve_care(a, b, MatrixXd::Identity(2, 2), MatrixXd::Identity(1, 1)), RiccatiError);
  EXPECT_THROW(lqr_gain(a, b, MatrixXd::Identity(2, 2), MatrixXd::Identity(1, 1)), RiccatiError);
}

TEST(Riccati, RejectsIndefiniteWeight) {
  EXPECT_THROW(solve_care(MatrixXd::Zero(1, 1), MatrixXd::Ones(1, 1), MatrixXd::Ones(1, 1),
                          -MatrixXd::Ones(1, 1)),
               RiccatiError);
}

TEST(Riccati, LyapunovSolution) {
  MatrixXd a(2, 2);
  a << -1, 2, 0, -3;
  const MatrixXd q = MatrixXd::Identity(2, 2);
  const MatrixXd x = solve_lyapunov(a, q);
  EXPECT_LT((a.transpose() * x + x * a + q).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Baselines, PdLaw) {
  EXPECT_EQ(pd_control(Vector3::Zero(), Vector3::Zero(), 1.0, 2.0), Vector3::Zero());
  EXPECT_EQ(pd_control(Vector3(1, 2, 3), Vector3::Zero(), 0.5, 2.0), Vector3(-0.5, -1, -1.5));
  const Vector3 e1(1, 0, 2), d1(0, 1, 0), e2(-3, 1, 0), d2(2, 2, 2);
  EXPECT_LT((pd_control(e1 + e2, d1 + d2, 0.3, 0.7) -
             (pd_control(e1, d1, 0.3, 0.7) + pd_control(e2, d2, 0.3, 0.7))).norm(), 1e-15);
  const LinearFeedback fb = LinearFeedback::from_pd(kDefaultOrbitPd);
  EXPECT_LT((fb.command(e1, d1) - pd_control(e1, d1, kDefaultOrbitPd.kp, kDefaultOrbitPd.kd)).norm(),
            1e-20);
}

TEST(Baselines, LqrFeedbackUsesCareGain) {
  const LinearPlant plant = attitude_plant(Vector3(8e-3, 8e-3, 3e-3).asDiagonal());
  const LqrWeights w = default_attitude_lqr_weights();
  const LinearFeedback fb = LinearFeedback::from_lqr(plant, w);
  const MatrixXd k = lqr_gain(plant.a, plant.b, diag(w.q_diag), diag(w.r_diag));
  const Vector3 e(0.1, -0.05, 0.02), ed(0.01, 0, -0.01);
  Eigen::Matrix<double, 6, 1> x;
  x << e, ed;
  EXPECT_LT((fb.command(e, ed) + k * x).norm(), 1e-18);
}
