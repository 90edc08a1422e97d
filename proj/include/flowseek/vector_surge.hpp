#pragma once

#include <stdexcept>
#include <string>

#include "flowseek/control.hpp"
#include "flowseek/flow_pipeline.hpp"
#include "flowseek/sensor_model.hpp"
#include "flowseek/vehicle.hpp"

// The Vector Surge behavior: cast with widening legs until flow is
// detected, reorient the vehicle onto the measured flow vector, surge
// upwind, fall back to casting when the flow is lost, stop at the source.

namespace flowseek {

enum class Phase { Calibrate, Cast, Reorient, Surge, Stopped };

inline const char* to_string(Phase p) {
  switch (p) {
    case Phase::Calibrate: return "Calibrate";
    case Phase::Cast: return "Cast";
    case Phase::Reorient: return "Reorient";
    case Phase::Surge: return "Surge";
    case Phase::Stopped: return "Stopped";
  }
  return "?";
}

enum class CastLeg { Left, Forward, Right };

inline const char* to_string(CastLeg l) {
  switch (l) {
    case CastLeg::Left: return "Left";
    case CastLeg::Forward: return "Forward";
    case CastLeg::Right: return "Right";
  }
  return "?";
}

struct SurgeParams {
  double detect_threshold_mT = kDetectThresholdMT;
  double stop_threshold_mT = 0.0;   ///< <= 0 means "derive from stop_apparent_mps"
  double stop_apparent_mps = 1.5;   ///< apparent-wind speed whose response is the stop threshold
  double loss_fraction = 0.9;       ///< loss threshold = fraction * detect threshold
  double loss_hold_s = 1.5;
  double cast_base_s = 2.0;
  double cast_increment_s = 1.0;
  double cast_speed_mps = 0.2;
  double surge_speed_mps = 0.2;
  double calibration_s = 2.0;

  double loss_threshold() const { return loss_fraction * detect_threshold_mT; }

  double stop_threshold(const SensorParams& sensor) const {
    return stop_threshold_mT > 0.0 ? stop_threshold_mT
                                   : magnitude_response(stop_apparent_mps, sensor);
  }

  void validate(const SensorParams& sensor) const {
    if (!(detect_threshold_mT > 0.0)) {
      throw std::invalid_argument("surge.detect_threshold_mT: must be > 0");
    }
    if (!(loss_fraction > 0.0 && loss_fraction < 1.0)) {
      throw std::invalid_argument("surge.loss_fraction: must be in (0, 1)");
    }
    if (!(stop_threshold(sensor) > detect_threshold_mT)) {
      throw std::invalid_argument("surge.stop_threshold_mT: must exceed detect_threshold_mT");
    }
    if (!(loss_hold_s >= 0.0)) throw std::invalid_argument("surge.loss_hold_s: must be >= 0");
    if (!(cast_base_s > 0.0)) throw std::invalid_argument("surge.cast_base_s: must be > 0");
    if (!(cast_increment_s >= 0.0)) {
      throw std::invalid_argument("surge.cast_increment_s: must be >= 0");
    }
    if (!(cast_speed_mps > 0.0)) throw std::invalid_argument("surge.cast_speed_mps: must be > 0");
    if (!(surge_speed_mps > 0.0)) throw std::invalid_argument("surge.surge_speed_mps: must be > 0");
    if (!(calibration_s > 0.0)) throw std::invalid_argument("surge.calibration_s: must be > 0");
  }
};

struct FsmState {
  Phase phase = Phase::Calibrate;
  int cast_cycle = 0;          ///< completed Left-Forward-Right sequences this cast
  CastLeg leg = CastLeg::Left;
  double leg_elapsed = 0.0;    ///< s into the current leg
  double loss_elapsed = 0.0;   ///< s the surge magnitude has stayed below the loss threshold
  double calib_elapsed = 0.0;  ///< s spent calibrating
};

/// Current cast leg duration: base + cycle * increment, widening the sweep.
inline double cast_leg_duration(const FsmState& s, const SurgeParams& p) {
  return p.cast_base_s + static_cast<double>(s.cast_cycle) * p.cast_increment_s;
}

/// One FSM tick. `reorient_done` comes from the ReorientMonitor and
/// `pd_yaw_rate` from the YawController; both are only consulted in the
/// phases that use them. Returns the next state and the command for this
/// tick.
///
/// Transitions:
///   Calibrate -> Cast      calibration window elapsed
///   Cast      -> Reorient  magnitude >= detect threshold
///   Reorient  -> Surge     reorient_done
///   Surge     -> Stopped   magnitude >= stop threshold
///   Surge     -> Cast      magnitude < loss threshold for loss_hold_s
///   otherwise self-loop; Stopped is absorbing.
inline std::pair<FsmState, Command> transition(const FsmState& state, const FlowEstimate& est,
                                               bool reorient_done, double pd_yaw_rate, double dt,
                                               const SurgeParams& p, const SensorParams& sensor,
                                               const VehicleParams& veh) {
  FsmState s = state;
  switch (s.phase) {
    case Phase::Calibrate:
      s.calib_elapsed += dt;
      if (s.calib_elapsed >= p.calibration_s) {
        s.phase = Phase::Cast;
        s.cast_cycle = 0;
        s.leg = CastLeg::Left;
        s.leg_elapsed = 0.0;
      }
      return {s, Command::clamped({0.0, 0.0}, 0.0, veh)};

    case Phase::Cast: {
      if (est.magnitude >= p.detect_threshold_mT) {
        s.phase = Phase::Reorient;
        return {s, Command::clamped({0.0, 0.0}, pd_yaw_rate, veh)};
      }
      s.leg_elapsed += dt;
      if (s.leg_elapsed >= cast_leg_duration(s, p)) {
        s.leg_elapsed = 0.0;
        switch (s.leg) {
          case CastLeg::Left: s.leg = CastLeg::Forward; break;
          case CastLeg::Forward: s.leg = CastLeg::Right; break;
          case CastLeg::Right:
            s.leg = CastLeg::Left;
            ++s.cast_cycle;
            break;
        }
      }
      Vec2 v{0.0, 0.0};
      switch (s.leg) {
        case CastLeg::Left: v = {0.0, p.cast_speed_mps}; break;
        case CastLeg::Forward: v = {p.cast_speed_mps, 0.0}; break;
        case CastLeg::Right: v = {0.0, -p.cast_speed_mps}; break;
      }
      return {s, Command::clamped(v, 0.0, veh)};
    }

    case Phase::Reorient:
      if (reorient_done) {
        s.phase = Phase::Surge;
        s.loss_elapsed = 0.0;
        return {s, Command::clamped({p.surge_speed_mps, 0.0}, pd_yaw_rate, veh)};
      }
      return {s, Command::clamped({0.0, 0.0}, pd_yaw_rate, veh)};

    case Phase::Surge:
      if (est.magnitude >= p.stop_threshold(sensor)) {
        s.phase = Phase::Stopped;
        return {s, Command::clamped({0.0, 0.0}, 0.0, veh)};
      }
      if (est.magnitude < p.loss_threshold()) {
        s.loss_elapsed += dt;
        if (s.loss_elapsed >= p.loss_hold_s) {
          s.phase = Phase::Cast;
          s.cast_cycle = 0;
          s.leg = CastLeg::Left;
          s.leg_elapsed = 0.0;
          s.loss_elapsed = 0.0;
          return {s, Command::clamped({0.0, p.cast_speed_mps}, 0.0, veh)};
        }
      } else {
        s.loss_elapsed = 0.0;
      }
      return {s, Command::clamped({p.surge_speed_mps, 0.0}, pd_yaw_rate, veh)};

    case Phase::Stopped:
      return {s, Command::clamped({0.0, 0.0}, 0.0, veh)};
  }
  throw std::logic_error("transition: unreachable phase");
}

}  // namespace flowseek
