#include "flowseek/vehicle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace flowseek;

namespace {

VehicleParams params() { return {}; }

}  // namespace

TEST(Command, ClampsOnConstruction) {
  const VehicleParams p = params();
  const Command c = Command::clamped({0.5, -0.31}, 400.0, p);
  EXPECT_DOUBLE_EQ(c.v_body.x, 0.2);
  EXPECT_DOUBLE_EQ(c.v_body.y, -0.2);
  EXPECT_DOUBLE_EQ(c.yaw_rate, 100.0);
  EXPECT_THROW(Command::clamped({std::numeric_limits<double>::quiet_NaN(), 0.0}, 0.0, p),
               std::invalid_argument);
}

TEST(Step, EquilibriumAtRest) {
  const VehicleParams p = params();
  QuadState s;
  s.pos = {1.0, 2.0};
  const QuadState n = step(s, Command::clamped({0.0, 0.0}, 0.0, p), {0.0, 0.0}, 0.025, p);
  EXPECT_DOUBLE_EQ(n.pos.x, 1.0);
  EXPECT_DOUBLE_EQ(n.pos.y, 2.0);
  EXPECT_DOUBLE_EQ(n.vel.norm(), 0.0);
  EXPECT_DOUBLE_EQ(n.yaw, 0.0);
  EXPECT_DOUBLE_EQ(n.t, 0.025);
}

TEST(Step, FirstOrderLagSteadyState) {
  const VehicleParams p = params();
  QuadState s;
  const Command c = Command::clamped({0.2, 0.0}, 0.0, p);
  for (int i = 0; i < 400; ++i) s = step(s, c, {0.0, 0.0}, 0.025, p);  // 10 s >> tau
  EXPECT_NEAR(s.vel.x, 0.2, 1e-6);
  EXPECT_NEAR(s.vel.y, 0.0, 1e-12);
}

TEST(Step, WindDriftSteadyState) {
  VehicleParams p = params();
  p.wind_gamma = 0.3;
  QuadState s;
  const Command c = Command::clamped({0.0, 0.0}, 0.0, p);
  for (int i = 0; i < 400; ++i) s = step(s, c, {1.0, 0.0}, 0.025, p);
  EXPECT_NEAR(s.vel.x, 0.3, 1e-6);
  EXPECT_NEAR(s.vel.y, 0.0, 1e-12);
}

TEST(Step, DriftFollowsWindDirection) {
  const VehicleParams p = params();
  QuadState s;
  const Vec2 wind{0.4, -0.7};
  const Command c = Command::clamped({0.0, 0.0}, 0.0, p);
  for (int i = 0; i < 400; ++i) s = step(s, c, wind, 0.025, p);
  EXPECT_NEAR(s.vel.cross(wind), 0.0, 1e-9);
  EXPECT_GT(s.vel.dot(wind), 0.0);
}

TEST(Step, YawIntegrationAndWrap) {
  const VehicleParams p = params();
  QuadState s;
  s.yaw = 350.0;
  const Command c = Command::clamped({0.0, 0.0}, 100.0, p);
  for (int i = 0; i < 8; ++i) s = step(s, c, {0.0, 0.0}, 0.1, p);
  // 350 + 80 wraps to 70.
  EXPECT_NEAR(s.yaw, 70.0, 1e-9);
}

TEST(Step, Deterministic) {
  const VehicleParams p = params();
  QuadState a, b;
  const Command c = Command::clamped({0.1, -0.05}, 12.0, p);
  for (int i = 0; i < 100; ++i) {
    a = step(a, c, {0.2, 0.1}, 0.025, p);
    b = step(b, c, {0.2, 0.1}, 0.025, p);
  }
  EXPECT_EQ(a.pos.x, b.pos.x);
  EXPECT_EQ(a.pos.y, b.pos.y);
  EXPECT_EQ(a.vel.x, b.vel.x);
  EXPECT_EQ(a.yaw, b.yaw);
}

TEST(Step, GuardsInvalidInput) {
  const VehicleParams p = params();
  QuadState s;
  const Command c = Command::clamped({0.0, 0.0}, 0.0, p);
  EXPECT_THROW(step(s, c, {0.0, 0.0}, 0.0, p), std::invalid_argument);
  EXPECT_THROW(step(s, c, {0.0, 0.0}, 0.2, p), std::invalid_argument);
  EXPECT_THROW(step(s, c, {std::numeric_limits<double>::infinity(), 0.0}, 0.025, p),
               std::invalid_argument);
}
