#include <gtest/gtest.h>

#include <cmath>

#include "ffsim/integrator.hpp"

using namespace ffsim;

TEST(Integrator, LinearSystemMatchesExponential) {
  // x' = A x with a damped rotation. One step is the degree-4 Taylor
  // polynomial of exp(hA); n steps converge to the matrix exponential.
  Eigen::Matrix2d a;
  a << -0.1, 1.0, -1.0, -0.1;
  const auto f = [&](double, const Eigen::Vector2d& x) -> Eigen::Vector2d { return a * x; };
  const Eigen::Vector2d x0(1.0, 0.5);
  const double t = 10.0;
  const double decay = std::exp(-0.1 * t);
  const Eigen::Vector2d exact(decay * (std::cos(t) * x0(0) + std::sin(t) * x0(1)),
                              decay * (-std::sin(t) * x0(0) + std::cos(t) * x0(1)));
  double previous_error = 0.0;
  for (double dt : {0.1, 0.05}) {
    const Eigen::Matrix2d ha = dt * a;
    const Eigen::Matrix2d taylor = Eigen::Matrix2d::Identity() + ha + ha * ha / 2.0 +
                                   ha * ha * ha / 6.0 + ha * ha * ha * ha / 24.0;
    Eigen::Vector2d x = x0, poly = x0;
    const int n = static_cast<int>(std::lround(t / dt));
    for (int k = 0; k < n; ++k) {
      x = integrate_step(x, f, k * dt, dt);
      poly = taylor * poly;
    }
    EXPECT_LT((x - poly).norm(), 1e-13);
    const double error = (x - exact).norm();
    EXPECT_LT(error, 1e-4);
    if (previous_error > 0.0) {
      EXPECT_NEAR(previous_error / error, 16.0, 1.0);
    }
    previous_error = error;
  }
}

TEST(Integrator, SingleStepIsFifthOrder) {
  const auto f = [](double, const Eigen::Matrix<double, 1, 1>& x) -> Eigen::Matrix<double, 1, 1> {
    return x;
  };
  Eigen::Matrix<double, 1, 1> x0;
  x0 << 1.0;
  const double e1 = std::abs(integrate_step(x0, f, 0.0, 0.1)(0) - std::exp(0.1));
  const double e2 = std::abs(integrate_step(x0, f, 0.0, 0.05)(0) - std::exp(0.05));
  EXPECT_NEAR(std::log2(e1 / e2), 5.0, 0.1);
}

TEST(Integrator, HarmonicOscillatorEnergyDrift) {
  const auto f = [](double, const Eigen::Vector2d& x) -> Eigen::Vector2d {
    return {x(1), -x(0)};
  };
  Eigen::Vector2d x(1.0, 0.0);
  const double dt = 0.01;
  for (int k = 0; k < 10000; ++k) x = integrate_step(x, f, k * dt, dt);
  EXPECT_LT(std::abs(0.5 * x.squaredNorm() - 0.5), 1e-10);
}

TEST(Integrator, ZeroStepIsIdentity) {
  int calls = 0;
  const auto f = [&](double, const Eigen::Vector2d& x) -> Eigen::Vector2d {
    ++calls;
    return x;
  };
  const Eigen::Vector2d x(3.0, -4.0);
  EXPECT_EQ(integrate_step(x, f, 0.0, 0.0), x);
  EXPECT_EQ(calls, 0);
  EXPECT_THROW(integrate_forward(x, f, 0.0, 0.0), std::invalid_argument);
}

TEST(Integrator, TimeArgumentReachesStages) {
  const auto f = [](double t, const Eigen::Matrix<double, 1, 1>&) -> Eigen::Matrix<double, 1, 1> {
    Eigen::Matrix<double, 1, 1> d;
    d << 3 * t * t;
    return d;
  };
  Eigen::Matrix<double, 1, 1> x = Eigen::Matrix<double, 1, 1>::Zero();
  x = integrate_step(x, f, 1.0, 0.5);
  EXPECT_NEAR(x(0), 1.5 * 1.5 * 1.5 - 1.0, 1e-14);
}
