#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ffsim/sliding_mode.hpp"

using namespace ffsim;

TEST(SlidingMode, OrbitSurfaceExample) {
  const NftsmParams p = default_orbit_tuning().sliding;
  EXPECT_EQ(sliding_variable_orb(Vector3::Zero(), Vector3::Zero(), p), Vector3::Zero());
  const Vector3 s = sliding_variable_orb(Vector3(1, 0, 0), Vector3::Zero(), p);
  EXPECT_NEAR(s.x(), 1.4e-2, 1e-17);
  EXPECT_EQ(s.y(), 0.0);
  EXPECT_EQ(s.z(), 0.0);
}

TEST(SlidingMode, OnSurfaceRateOpposesError) {
  const NftsmParams p = default_orbit_tuning().sliding;
  const Vector3 e(2.0, -0.5, 0.01);
  // Solve s = 0 for e_dot.
  Vector3 e_dot;
  for (int i = 0; i < 3; ++i) {
    e_dot(i) = -(p.alpha(i) * std::copysign(std::pow(std::abs(e(i)), p.rho), e(i)) + p.beta(i) * e(i));
  }
  EXPECT_LT(sliding_variable_orb(e, e_dot, p).norm(), 1e-15);  // rounding of terms near 1e-2
  for (int i = 0; i < 3; ++i) EXPECT_LT(e(i) * e_dot(i), 0.0);
}

TEST(SlidingMode, AttitudeSurfaceExample) {
  const NftsmParams p = default_attitude_tuning().sliding;
  const Vector3 s = sliding_variable_att(Vector3(0.1, 0, 0), Vector3::Zero(), p);
  EXPECT_NEAR(s.x(), 1.44 * 0.07943282347242815 + 1.44 * 0.1, 1e-15);
  const Vector3 s2 = sliding_variable_att(Vector3(0.1, 0.3, 0), Vector3::Zero(), p);
  EXPECT_EQ(s.x(), s2.x());
}

TEST(SlidingMode, SmoothControlIsScaledOpposite) {
  const AdaptiveGainState g{3e-4, 1e-8, 4.5e-4};
  EXPECT_EQ(adaptive_smooth_control(Vector3::Zero(), g, 1.2e-2), Vector3::Zero());
  const Vector3 s(0.01, -0.02, 0.005);
  const Vector3 u = adaptive_smooth_control(s, g, 1.2e-2);
  EXPECT_NEAR(u.norm(), 3e-4 / 1.2e-2 * s.norm(), 1e-18);
  EXPECT_NEAR(u.normalized().dot(s.normalized()), -1.0, 1e-15);
  EXPECT_THROW(adaptive_smooth_control(s, g, 0.0), std::invalid_argument);
}

TEST(SlidingMode, GainRateSigns) {
  AdaptiveGainState g{1e-8, 1e-8, 4.5e-4};
  EXPECT_EQ(adaptive_gain_rate(g, Vector3::Zero()), 0.0);
  g.k = 1e-4;
  EXPECT_GT(adaptive_gain_rate(g, Vector3(2e-4, 0, 0)), 0.0);
  EXPECT_LT(adaptive_gain_rate(g, Vector3(5e-5, 0, 0)), 0.0);
}

TEST(SlidingMode, ReorganizedAdaptationMatches) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> logk(-8.0, -2.0);
  const double eps = 1.2e-2;
  for (int i = 0; i < 1000; ++i) {
    AdaptiveGainState g{std::pow(10.0, logk(rng)), 1e-8, 4.5e-4};
    g.k = std::max(g.k, g.k0);
    const Vector3 s = 0.05 * Vector3(unit(rng), unit(rng), unit(rng));
    const double direct = adaptive_gain_rate(g, adaptive_smooth_control(s, g, eps));
    const double reorganized = adaptive_gain_rate_from_sliding(g, s, eps);
    EXPECT_NEAR(direct, reorganized, 1e-15 * std::max(std::abs(direct), g.eta * g.k));
    // Sign flips where |s|/eps crosses 1 - K0/K.
    const double threshold = 1.0 - g.k0 / g.k;
    if (std::abs(s.norm() / eps - threshold) > 1e-9) {
      EXPECT_EQ(direct > 0.0, s.norm() / eps > threshold);
    }
  }
}

TEST(SlidingMode, GainStepFloorsAtK0) {
  AdaptiveGainState g{2e-8, 1e-8, 0.9};
  const AdaptiveGainState next = adaptive_gain_step(g, Vector3::Zero(), 1.0);
  EXPECT_EQ(next.k, g.k0 + (g.k - g.k0) * (1 - 0.9));
  g.k = g.k0;
  EXPECT_EQ(adaptive_gain_step(g, Vector3::Zero(), 1.0).k, g.k0);
  EXPECT_THROW(adaptive_gain_step(g, Vector3::Zero(), 0.0), std::invalid_argument);
  EXPECT_THROW(adaptive_gain_step(g, Vector3::Zero(), 2.0), std::invalid_argument);
}

TEST(SlidingMode, ParameterValidation) {
  NftsmParams p;
  p.rho = 2.5;
  try {
    p.validate();
    FAIL() << "rho 2.5 accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "rho out of (1,2)");
  }
  p.rho = 1.5;
  p.alpha.x() = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  AdaptiveGainState g{1e-9, 1e-8, 1.0};
  EXPECT_THROW(g.validate(), std::invalid_argument);
}

TEST(SlidingMode, ControllerNeverDropsBelowFloor) {
  AdaptiveSlidingController ctrl(default_attitude_tuning());
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const double scale = (i / 1000) % 2 == 0 ? 1e-4 : 0.2;
    const auto out = ctrl.update(scale * Vector3(unit(rng), unit(rng), unit(rng)), 0.01);
    ASSERT_GE(out.k, ctrl.tuning().gain.k0);
    ASSERT_GE(ctrl.gain(), ctrl.tuning().gain.k0);
  }
}

TEST(SlidingMode, CommandIsLipschitzInSlidingVariable) {
  // u_k - u_{k-1} = K_k (s_k - s_{k-1}) / eps + (K_k - K_{k-1}) s_{k-1} / eps
  AdaptiveSlidingController ctrl(default_orbit_tuning());
  const double eps = ctrl.tuning().sliding.epsilon;
  Vector3 s_prev(0.02, -0.01, 0.03);
  auto prev = ctrl.update(s_prev, 5.0);
  double k_max = prev.k;
  for (int i = 1; i < 200; ++i) {
    const Vector3 s = s_prev * 0.98 + Vector3(1e-4 * std::sin(i), 0, 0);
    const auto out = ctrl.update(s, 5.0);
    k_max = std::max(k_max, out.k);
    const double bound =
        k_max / eps * (s - s_prev).norm() + std::abs(out.k - prev.k) / eps * s_prev.norm();
    EXPECT_LE((out.u - prev.u).norm(), bound * (1 + 1e-12));
    s_prev = s;
    prev = out;
  }
}
