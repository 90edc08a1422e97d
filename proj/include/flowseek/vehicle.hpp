#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flowseek/geometry.hpp"

// Planar kinematic quadrotor: velocity/yaw-rate command interface with a
// first-order velocity lag and wind drift. Yaw responds directly to the
// (clamped) yaw-rate command.

namespace flowseek {

struct QuadState {
  Vec2 pos{0.0, 0.0};  ///< m, world
  double yaw = 0.0;    ///< deg, [0, 360)
  Vec2 vel{0.0, 0.0};  ///< m/s, world
  double t = 0.0;      ///< s
};

struct VehicleParams {
  double tau_s = 0.5;            ///< first-order velocity lag
  double wind_gamma = 0.1;       ///< fraction of the local wind added to the velocity target
  double v_max_mps = 0.2;        ///< per-axis body-frame command clamp
  double yaw_rate_max_dps = 100.0;

  void validate() const {
    if (!(tau_s > 0.0)) throw std::invalid_argument("vehicle.tau_s: must be > 0");
    if (!(wind_gamma >= 0.0)) throw std::invalid_argument("vehicle.wind_gamma: must be >= 0");
    if (!(v_max_mps > 0.0)) throw std::invalid_argument("vehicle.v_max_mps: must be > 0");
    if (!(yaw_rate_max_dps > 0.0)) {
      throw std::invalid_argument("vehicle.yaw_rate_max_dps: must be > 0");
    }
  }
};

/// Velocity command in the body frame plus a yaw rate, clamped on
/// construction to the vehicle limits.
struct Command {
  Vec2 v_body{0.0, 0.0};  ///< m/s
  double yaw_rate = 0.0;  ///< deg/s

  static Command clamped(Vec2 v_body, double yaw_rate, const VehicleParams& p) {
    if (!v_body.finite() || !std::isfinite(yaw_rate)) {
      throw std::invalid_argument("Command: non-finite input");
    }
    Command c;
    c.v_body.x = std::clamp(v_body.x, -p.v_max_mps, p.v_max_mps);
    c.v_body.y = std::clamp(v_body.y, -p.v_max_mps, p.v_max_mps);
    c.yaw_rate = std::clamp(yaw_rate, -p.yaw_rate_max_dps, p.yaw_rate_max_dps);
    return c;
  }
};

/// Advance the vehicle one step. The velocity relaxes toward
/// body_to_world(cmd.v_body) + gamma * wind with time constant tau.
inline QuadState step(const QuadState& state, const Command& cmd, Vec2 wind, double dt,
                      const VehicleParams& p) {
  if (!(dt > 0.0 && dt <= 0.1)) throw std::invalid_argument("step: dt must be in (0, 0.1]");
  if (!state.pos.finite() || !state.vel.finite() || !std::isfinite(state.yaw) ||
      !wind.finite() || !cmd.v_body.finite() || !std::isfinite(cmd.yaw_rate)) {
    throw std::invalid_argument("step: non-finite input");
  }
  const Vec2 target = body_to_world(cmd.v_body, state.yaw) + wind * p.wind_gamma;
  const double alpha = 1.0 - std::exp(-dt / p.tau_s);
  QuadState next = state;
  next.vel = state.vel + (target - state.vel) * alpha;
  next.pos = state.pos + next.vel * dt;
  const double rate = std::clamp(cmd.yaw_rate, -p.yaw_rate_max_dps, p.yaw_rate_max_dps);
  next.yaw = wrap360(state.yaw + rate * dt);
  next.t = state.t + dt;
  return next;
}

}  // namespace flowseek
