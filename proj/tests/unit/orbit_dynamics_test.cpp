#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "ffsim/constants.hpp"
#include "ffsim/orbit_dynamics.hpp"
#include "oracles.hpp"

using namespace ffsim;
using constants::kDegToRad;

namespace {

constexpr double kRadius = constants::kEarthRadius + 550e3;

ChiefState sso_chief() { return circular_chief(kRadius, 97.6 * kDegToRad, -15 * kDegToRad, 0.3); }

}  // namespace

TEST(OrbitDynamics, CircularChiefHasCircularSpeed) {
  const ChiefState c = sso_chief();
  EXPECT_NEAR(c.r.norm(), kRadius, 1e-6);
  EXPECT_NEAR(c.v.norm(), std::sqrt(constants::kMuEarth / kRadius), 1e-9);
  EXPECT_NEAR(c.r.dot(c.v), 0.0, 1e-3);
  EXPECT_NEAR(c.r.cross(c.v).normalized().z(), std::cos(97.6 * kDegToRad), 1e-12);
}

TEST(OrbitDynamics, ChiefDerivativeIsTwoBodyPlusPerturbation) {
  const ChiefState c = sso_chief();
  const Vector3 p(1e-6, -2e-6, 3e-6);
  const ChiefDerivative d = chief_derivative(c, p);
  EXPECT_EQ(d.r_dot, c.v);
  EXPECT_LT((d.v_dot - oracle::two_body(c.r) - p).norm(), 1e-15);
}

TEST(OrbitDynamics, ZeroSeparationHasZeroAcceleration) {
  const ChiefState c = sso_chief();
  const Vector3 a = relative_accel(c, RelativeState{}, Vector3::Zero(), Vector3::Zero(), 2.4);
  EXPECT_LT(a.norm(), 1e-15);
}

TEST(OrbitDynamics, SmallOffsetsMatchLinearizedCircularModel) {
  const ChiefState c = sso_chief();
  const double n = std::sqrt(constants::kMuEarth / std::pow(kRadius, 3));
  const Vector3 r(0.1, -0.2, 0.15), v(1e-4, 2e-4, -1e-4);
  const Vector3 a = relative_accel(c, {r, v}, Vector3::Zero(), Vector3::Zero(), 2.4);
  const Vector3 hcw(3 * n * n * r.x() + 2 * n * v.y(), -2 * n * v.x(), -n * n * r.z());
  EXPECT_LT((a - hcw).norm(), 1e-12);
}

TEST(OrbitDynamics, ForcesEnterThroughActualMass) {
  const ChiefState c = sso_chief();
  const RelativeState rel{Vector3(10, 20, -5), Vector3(0.01, 0, 0.002)};
  const Vector3 u(1e-3, 0, -2e-4), d(1e-6, 1e-6, 0);
  const Vector3 a0 = relative_accel(c, rel, Vector3::Zero(), Vector3::Zero(), 2.4);
  const Vector3 a1 = relative_accel(c, rel, u, d, 2.4);
  EXPECT_LT(((a1 - a0) - (u + d) / 2.4).norm(), 1e-18);
  EXPECT_THROW(relative_accel(c, rel, u, d, 0.0), std::invalid_argument);
}

TEST(OrbitDynamics, NaturalReferenceGivesZeroErrorAcceleration) {
  const ChiefState c = sso_chief();
  ReferenceState ref;
  ref.r = Vector3(12.0, -30.0, 20.0);
  ref.v = Vector3(0.002, -0.001, 0.0005);
  ref.a = relative_accel(c, {ref.r, ref.v}, Vector3::Zero(), Vector3::Zero(), 2.4);
  const Vector3 e = orbit_error_derivative(c, RelativeState{}, ref, Vector3::Zero(), Vector3::Zero(), 2.4);
  EXPECT_LT(e.norm(), 1e-18);
}

TEST(OrbitDynamics, InertialConversionRoundTrip) {
  const ChiefState c = sso_chief();
  const RelativeState rel{Vector3(40, -3, 7), Vector3(0.01, -0.02, 0.003)};
  const InertialState dep = deputy_inertial(c, c.lvlh(), rel);
  EXPECT_LT((oracle::relative_position(c.r, c.v, dep.r) - rel.r).norm(), 1e-9);
  const RelativeState back = relative_from_inertial(c, dep);
  EXPECT_LT((back.r - rel.r).norm(), 1e-9);
  EXPECT_LT((back.v - rel.v).norm(), 1e-12);
}

TEST(OrbitDynamics, MassModelBounds) {
  MassModel m;
  EXPECT_NO_THROW(m.validate());
  m.delta = 0.24;
  EXPECT_NO_THROW(m.validate());
  m.delta = 0.25;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m.delta = 0.0;
  m.nominal = -1.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(OrbitDynamics, RelativeModelMatchesDualInertialPropagationOverOneOrbit) {
  const ChiefState c = sso_chief();
  const RelativeState rel{Vector3(60.0, -70.0, 40.0).normalized() * 100.0,
                          Vector3(0.01, -0.02, 0.015)};
  const auto start = std::chrono::steady_clock::now();
  const auto res = oracle::dual_propagation(c, rel, oracle::orbit_period(kRadius), 1.0);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(res.max_position_error, 1e-6);
  EXPECT_LT(seconds, 10.0);
}

TEST(OrbitDynamics, CircularAccelerationMagnitude) {
  const ChiefState c = sso_chief();
  EXPECT_NEAR(chief_derivative(c).v_dot.norm(), constants::kMuEarth / (kRadius * kRadius), 1e-12);
}

TEST(OrbitDynamics, ChiefClosesAfterOnePeriodAndConservesEnergy) {
  const ChiefState c0 = sso_chief();
  const auto energy = [](const ChiefState& c) {
    return 0.5 * c.v.squaredNorm() - constants::kMuEarth / c.r.norm();
  };
  const double period = oracle::orbit_period(kRadius);
  const int n = 5740;
  const double dt = period / n;
  ChiefState c = c0;
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    c = propagate_chief(c, dt);
    worst = std::max(worst, std::abs(energy(c) / energy(c0) - 1.0));
  }
  EXPECT_LT((c.r - c0.r).norm() / kRadius, 1e-6);
  EXPECT_LT(worst, 1e-10);
}

TEST(OrbitDynamics, ControlFeedthroughAtChief) {
  const ChiefState c = sso_chief();
  const Vector3 a = relative_accel(c, RelativeState{}, Vector3(2.4 * 1e-4, 0, 0), Vector3::Zero(), 2.4);
  EXPECT_NEAR(a.x(), 1e-4, 1e-18);
  EXPECT_NEAR(a.tail<2>().norm(), 0.0, 1e-18);
}

TEST(OrbitDynamics, ErrorDerivativeIdentities) {
  const ChiefState c = sso_chief();
  const RelativeState err{Vector3(1, -2, 0.5), Vector3(0.01, 0, -0.02)};
  const ReferenceState ref{Vector3(30, 20, -15), Vector3(0.02, -0.01, 0), Vector3(1e-5, 2e-5, 0)};
  const Vector3 u(1e-4, -2e-4, 0), d(1e-7, 0, 0);
  const Vector3 e = orbit_error_derivative(c, err, ref, u, d, 2.4);
  const Vector3 full = relative_accel(c, {err.r + ref.r, err.v + ref.v}, u, d, 2.4);
  EXPECT_LT((e + ref.a - full).norm(), 1e-12);
  EXPECT_EQ(orbit_error_derivative(c, err, ReferenceState{}, u, d, 2.4),
            relative_accel(c, err, u, d, 2.4));
}
