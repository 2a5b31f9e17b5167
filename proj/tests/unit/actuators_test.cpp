#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ffsim/actuators.hpp"

using namespace ffsim;

namespace {

bool is_multiple(double v, double res) {
  const double k = v / res;
  return std::abs(k - std::round(k)) < 1e-9;
}

}  // namespace

TEST(Actuators, MaskAndUnderResolution) {
  const ActuatorSpec spec;
  const Vector3 out = thrust_actuator(Vector3(0.5e-3, -0.004e-3, 0.2e-3), spec);
  EXPECT_NEAR(out.x(), 0.5e-3, 1e-18);
  EXPECT_EQ(out.y(), 0.0);
  EXPECT_EQ(out.z(), 0.0);
}

TEST(Actuators, Saturation) {
  const ActuatorSpec spec;
  EXPECT_EQ(thrust_actuator(Vector3(2e-3, 0, 0), spec), Vector3(1e-3, 0, 0));
  EXPECT_EQ(thrust_actuator(Vector3(0, -5e-3, 0), spec), Vector3(0, -1e-3, 0));
}

TEST(Actuators, QuantizationRoundsHalfAwayFromZero) {
  EXPECT_DOUBLE_EQ(quantize(2.5, 1.0), 3.0);
  EXPECT_DOUBLE_EQ(quantize(-2.5, 1.0), -3.0);
  EXPECT_DOUBLE_EQ(quantize(0.49, 1.0), 0.0);
}

TEST(Actuators, OutputsAreAdmissible) {
  const ActuatorSpec spec;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3e-3, 3e-3);
  for (int i = 0; i < 10000; ++i) {
    const Vector3 out = thrust_actuator(Vector3(u(rng), u(rng), u(rng)), spec);
    ASSERT_EQ(out.z(), 0.0);
    ASSERT_LE(out.cwiseAbs().maxCoeff(), spec.u_max);
    ASSERT_TRUE(is_multiple(out.x(), 1e-5) && is_multiple(out.y(), 1e-5));
    ASSERT_TRUE(thrust_is_admissible(out, spec));
  }
  EXPECT_FALSE(thrust_is_admissible(Vector3(0, 0, 1e-5), spec));
  EXPECT_FALSE(thrust_is_admissible(Vector3(1.5e-5, 0, 0), spec));
  EXPECT_FALSE(thrust_is_admissible(Vector3(1.01e-3, 0, 0), spec));
}

TEST(Actuators, WheelClamp) {
  const ActuatorSpec spec;
  EXPECT_EQ(wheel_actuator(Vector3(1e-4, -2e-4, 0), spec), Vector3(1e-4, -2e-4, 0));
  EXPECT_EQ(wheel_actuator(Vector3(1e-3, -1e-3, 5e-4), spec), Vector3(0.23e-3, -0.23e-3, 0.23e-3));
  EXPECT_TRUE(torque_is_admissible(wheel_actuator(Vector3(-9, 9, 0), spec), spec));
  EXPECT_FALSE(torque_is_admissible(Vector3(0.24e-3, 0, 0), spec));
}

TEST(Actuators, UnmaskedSpecKeepsZ) {
  ActuatorSpec spec;
  spec.z_masked = false;
  EXPECT_NEAR(thrust_actuator(Vector3(0, 0, 0.3e-3), spec).z(), 0.3e-3, 1e-18);
  spec.u_resolution = -1.0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}
