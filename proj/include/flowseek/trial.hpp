#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flowseek/config.hpp"
#include "flowseek/control.hpp"
#include "flowseek/flow_pipeline.hpp"
#include "flowseek/rng.hpp"
#include "flowseek/sensor_model.hpp"
#include "flowseek/trial_log.hpp"
#include "flowseek/vector_surge.hpp"
#include "flowseek/vehicle.hpp"
#include "flowseek/wind_field.hpp"

// Closed-loop source-seeking trial: sensor -> pipeline -> controller ->
// FSM -> vehicle at the sensor rate until Stopped, wall contact, or the
// time limit.

namespace flowseek {

struct TrialResult {
  TrialLog log;
  std::vector<FlowSample> samples;  ///< raw stream, replayable
  Outcome outcome = Outcome::Timeout;
};

/// Minimum wind speed at a "plume" start position: below the casting
/// detection threshold, so trials that never find flow stay possible,
/// while the widening cast still has flow within reach.
inline constexpr double kStartRegionWindFloor = 0.05;

/// Uniform random start pose with a keep-out disc around the fan.
/// Regions: "arena" = anywhere; "downwind" = in front of the fan plane;
/// "plume" = positions where the plume is in principle detectable.
inline bool in_arena(const ScenarioConfig& cfg, Vec2 p) {
  return p.x > 0.0 && p.x < cfg.arena_width_m && p.y > 0.0 && p.y < cfg.arena_height_m;
}

inline QuadState random_start(const ScenarioConfig& cfg, RngStream& rng) {
  const Vec2 axis = unit_from_bearing(cfg.fan.heading_deg);
  for (int i = 0; i < 100000; ++i) {
    Vec2 p{rng.uniform(0.0, cfg.arena_width_m), rng.uniform(0.0, cfg.arena_height_m)};
    if (!in_arena(cfg, p)) continue;
    if ((p - cfg.fan.origin).norm() < cfg.fan_keepout_m) continue;
    if (cfg.start_region == "downwind" && (p - cfg.fan.origin).dot(axis) < cfg.fan_keepout_m) {
      continue;
    }
    if (cfg.start_region == "plume" && wind_at(cfg.fan, p).norm() < kStartRegionWindFloor) {
      continue;
    }
    QuadState q;
    q.pos = p;
    q.yaw = rng.uniform(0.0, 360.0);
    return q;
  }
  throw ConfigError("trial.start_region: could not sample a start pose");
}

/// Run one seeded trial from the given start pose.
///
/// The Calibrate phase runs with the fan gated off, mirroring the flight
/// protocol of calibrating at take-off and switching the fan on afterward;
/// the plume becomes active at the Calibrate -> Cast transition.
inline TrialResult run_trial(const ScenarioConfig& cfg, QuadState initial, std::uint64_t seed) {
  cfg.validate();
  if (!in_arena(cfg, initial.pos)) {
    throw ConfigError("trial: initial pose outside arena bounds");
  }

  const SurgeParams surge = cfg.resolved_surge();
  const double dt = 1.0 / cfg.sensor.sample_rate_hz;
  RngStream rng(seed);

  TrialResult res;
  QuadState quad = initial;
  FsmState fsm;
  YawController controller(cfg.gains, cfg.vehicle.yaw_rate_max_dps);
  ReorientMonitor monitor(cfg.reorient_tolerance_deg, cfg.reorient_hold_s);
  std::vector<FlowSample> calib_window;
  std::optional<FlowPipeline> pipeline;

  const std::size_t max_ticks = static_cast<std::size_t>(cfg.time_limit_s / dt) + 1;
  res.log.ticks.reserve(max_ticks);

  while (true) {
    const bool fan_on = fsm.phase != Phase::Calibrate;
    const Vec2 wind = fan_on ? wind_at(cfg.fan, quad.pos) : Vec2{0.0, 0.0};
    const FlowSample raw = sample(wind, quad, cfg.sensor, rng);
    res.samples.push_back(raw);

    FlowEstimate est;
    if (fsm.phase == Phase::Calibrate) {
      calib_window.push_back(raw);
    } else {
      est = pipeline->estimate(raw);
    }

    const bool active = fsm.phase == Phase::Reorient || fsm.phase == Phase::Surge;
    const double pd_yaw = active ? controller.update(est.theta, dt) : 0.0;
    bool reorient_done = false;
    if (fsm.phase == Phase::Reorient) {
      reorient_done = monitor.update(est.theta, dt);
    } else {
      monitor.reset();
    }

    const Phase prev_phase = fsm.phase;
    auto [next, cmd] = transition(fsm, est, reorient_done, pd_yaw, dt, surge, cfg.sensor,
                                  cfg.vehicle);
    fsm = next;
    if (prev_phase == Phase::Calibrate && fsm.phase == Phase::Cast) {
      pipeline.emplace(cfg.filter_window, calibrate(calib_window), cfg.detect_threshold_mT);
    }
    if (fsm.phase == Phase::Reorient && prev_phase != Phase::Reorient) {
      controller.reset();
      monitor.reset();
    }

    Tick k;
    k.t = quad.t;
    k.x = quad.pos.x;
    k.y = quad.pos.y;
    k.yaw = quad.yaw;
    k.bx = raw.bx;
    k.by = raw.by;
    k.theta = est.theta;
    k.mag = est.magnitude;
    k.detected = est.detected;
    k.phase = to_string(fsm.phase);
    k.cmd_vx = cmd.v_body.x;
    k.cmd_vy = cmd.v_body.y;
    k.cmd_yawrate = cmd.yaw_rate;
    res.log.ticks.push_back(std::move(k));

    if (fsm.phase == Phase::Stopped) {
      const double dist = (quad.pos - cfg.fan.origin).norm();
      res.outcome = dist <= cfg.success_radius_m ? Outcome::Success : Outcome::Timeout;
      break;
    }

    quad = step(quad, cmd, wind, dt, cfg.vehicle);

    if (!in_arena(cfg, quad.pos)) {
      res.outcome = Outcome::Escaped;
      break;
    }
    if (quad.t >= cfg.time_limit_s) {
      res.outcome = Outcome::Timeout;
      break;
    }
  }

  res.log.summary = summarize_ticks(res.log.ticks, cfg.fan.origin, res.outcome);
  return res;
}

}  // namespace flowseek
