#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "flowseek/config.hpp"
#include "flowseek/trial.hpp"

// Scenario runners for the three experiments plus batch Monte Carlo and
// offline replay. Each returns in-memory results; file emission lives in
// the CLI.

namespace flowseek {

// ---------------------------------------------------------------------------
// characterize: in-place rotation at each anchor position
// ---------------------------------------------------------------------------

struct CharacterizePosition {
  double distance_m = 0.0;
  double speed_mps = 0.0;
  double rms_deg = 0.0;  ///< bearing-tracking RMS, group-delay compensated
  TrialLog log;
  std::vector<FlowSample> samples;
};

inline constexpr double kRotationRateDps = 24.0;  ///< four turns per 60 s
inline constexpr double kRotationDuration = 60.0;
inline constexpr double kFanSettle = 1.0;

/// Rotation protocol at every anchor distance: hover + calibrate with the
/// fan off, fan on, then a 60 s in-place yaw rotation. The tracking error
/// is measured against the true upwind bearing delayed by the filter's
/// (window-1)/2-sample group delay, which is the bearing the trailing
/// moving average is actually estimating.
inline std::vector<CharacterizePosition> run_characterize(const ScenarioConfig& cfg) {
  cfg.validate();
  const double dt = 1.0 / cfg.sensor.sample_rate_hz;
  const Vec2 axis = unit_from_bearing(cfg.fan.heading_deg);
  std::vector<CharacterizePosition> out;

  for (std::size_t pi = 0; pi < cfg.fan.anchors.size(); ++pi) {
    const PlumeAnchor anchor = cfg.fan.anchors[pi];
    CharacterizePosition pos;
    pos.distance_m = anchor.distance_m;
    pos.speed_mps = anchor.speed_mps;

    RngStream rng(derive_seed(cfg.master_seed, pi));
    QuadState quad;
    quad.pos = cfg.fan.origin + axis * anchor.distance_m;
    quad.yaw = 0.0;

    std::vector<FlowSample> calib_window;
    std::optional<FlowPipeline> pipeline;
    const double t_rot_start = cfg.calibration_s + kFanSettle;
    const double t_end = t_rot_start + kRotationDuration;

    std::vector<double> body_bearing_true;  // upwind bearing minus unwrapped yaw, per tick
    std::vector<double> theta_meas;
    std::vector<double> tick_time;
    double yaw_unwrapped = quad.yaw;

    while (quad.t < t_end) {
      const bool calibrating = quad.t < cfg.calibration_s;
      const Vec2 wind = calibrating ? Vec2{0.0, 0.0} : wind_at(cfg.fan, quad.pos);
      const FlowSample raw = sample(wind, quad, cfg.sensor, rng);
      pos.samples.push_back(raw);

      FlowEstimate est;
      if (calibrating) {
        calib_window.push_back(raw);
      } else {
        if (!pipeline) {
          pipeline.emplace(cfg.filter_window, calibrate(calib_window), cfg.detect_threshold_mT);
        }
        est = pipeline->estimate(raw);
      }

      const bool rotating = quad.t >= t_rot_start;
      const Command cmd =
          Command::clamped({0.0, 0.0}, rotating ? kRotationRateDps : 0.0, cfg.vehicle);

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
      k.phase = calibrating ? "Calibrate" : (rotating ? "Rotate" : "Hover");
      k.cmd_yawrate = cmd.yaw_rate;
      pos.log.ticks.push_back(std::move(k));

      if (!calibrating && (wind.x != 0.0 || wind.y != 0.0)) {
        tick_time.push_back(quad.t);
        theta_meas.push_back(est.theta);
        body_bearing_true.push_back(upwind_bearing_at(cfg.fan, quad.pos) - yaw_unwrapped);
      } else {
        tick_time.push_back(quad.t);
        theta_meas.push_back(std::numeric_limits<double>::quiet_NaN());
        body_bearing_true.push_back(std::numeric_limits<double>::quiet_NaN());
      }

      quad = step(quad, cmd, wind, dt, cfg.vehicle);
      yaw_unwrapped += cmd.yaw_rate * dt;
    }

    // RMS of the compensated error over the rotation window, skipping the
    // first two seconds (filter warm-up and velocity transient).
    const double delay_ticks = (static_cast<double>(cfg.filter_window) - 1.0) / 2.0;
    double sum_sq = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < theta_meas.size(); ++k) {
      if (tick_time[k] < t_rot_start + 2.0) continue;
      const double shifted = static_cast<double>(k) - delay_ticks;
      const std::size_t lo = static_cast<std::size_t>(std::floor(shifted));
      const double frac = shifted - std::floor(shifted);
      if (lo + 1 >= body_bearing_true.size()) continue;
      const double b = (1.0 - frac) * body_bearing_true[lo] + frac * body_bearing_true[lo + 1];
      if (std::isnan(b) || std::isnan(theta_meas[k])) continue;
      const double err = wrap180(theta_meas[k] - b);
      sum_sq += err * err;
      ++n;
    }
    pos.rms_deg = n > 0 ? std::sqrt(sum_sq / static_cast<double>(n))
                        : std::numeric_limits<double>::quiet_NaN();
    pos.log.summary = summarize_ticks(pos.log.ticks, cfg.fan.origin, Outcome::Timeout);
    out.push_back(std::move(pos));
  }
  return out;
}

// ---------------------------------------------------------------------------
// reorient: PD flow servoing from fixed initial bearing errors
// ---------------------------------------------------------------------------

struct ReorientCell {
  double distance_m = 0.0;
  double speed_mps = 0.0;
  double initial_error_deg = 0.0;
  double settle_time_s = 0.0;  ///< time from controller-on; infinity if never settled
  bool settled = false;
  TrialLog log;
};

inline constexpr double kReorientRun = 25.0;     ///< s with the controller active
inline constexpr double kSettleBandDeg = 20.0;

inline std::vector<double> default_initial_errors() { return {180.0, 90.0, 45.0}; }

/// Grid of anchors x initial errors. Settling time is the first moment
/// after which the true bearing error stays inside the 20-degree band for
/// the remainder of the run.
inline std::vector<ReorientCell> run_reorient(const ScenarioConfig& cfg,
                                              const std::vector<double>& initial_errors =
                                                  default_initial_errors(),
                                              bool keep_logs = false) {
  cfg.validate();
  const double dt = 1.0 / cfg.sensor.sample_rate_hz;
  const Vec2 axis = unit_from_bearing(cfg.fan.heading_deg);
  std::vector<ReorientCell> cells;
  std::size_t run_index = 0;

  for (const PlumeAnchor& anchor : cfg.fan.anchors) {
    for (double err0 : initial_errors) {
      ReorientCell cell;
      cell.distance_m = anchor.distance_m;
      cell.speed_mps = anchor.speed_mps;
      cell.initial_error_deg = err0;

      RngStream rng(derive_seed(cfg.master_seed, 100 + run_index));
      ++run_index;

      QuadState quad;
      quad.pos = cfg.fan.origin + axis * anchor.distance_m;
      const double upwind = wrap360(cfg.fan.heading_deg + 180.0);
      quad.yaw = wrap360(upwind - err0);

      std::vector<FlowSample> calib_window;
      std::optional<FlowPipeline> pipeline;
      YawController controller(cfg.gains, cfg.vehicle.yaw_rate_max_dps);
      const double t_on = cfg.calibration_s + kFanSettle;
      const double t_end = t_on + kReorientRun;

      std::vector<double> err_true;
      std::vector<double> err_t;

      while (quad.t < t_end) {
        const bool calibrating = quad.t < cfg.calibration_s;
        const Vec2 wind = calibrating ? Vec2{0.0, 0.0} : wind_at(cfg.fan, quad.pos);
        const FlowSample raw = sample(wind, quad, cfg.sensor, rng);

        FlowEstimate est;
        if (calibrating) {
          calib_window.push_back(raw);
        } else {
          if (!pipeline) {
            pipeline.emplace(cfg.filter_window, calibrate(calib_window), cfg.detect_threshold_mT);
          }
          est = pipeline->estimate(raw);
        }

        const bool active = quad.t >= t_on;
        const double u = active ? controller.update(est.theta, dt) : 0.0;
        const Command cmd = Command::clamped({0.0, 0.0}, u, cfg.vehicle);

        if (active && (wind.x != 0.0 || wind.y != 0.0)) {
          err_true.push_back(wrap180(upwind_bearing_at(cfg.fan, quad.pos) - quad.yaw));
          err_t.push_back(quad.t - t_on);
        }

        if (keep_logs) {
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
          k.phase = calibrating ? "Calibrate" : (active ? "Reorient" : "Hover");
          k.cmd_yawrate = cmd.yaw_rate;
          cell.log.ticks.push_back(std::move(k));
        }

        quad = step(quad, cmd, wind, dt, cfg.vehicle);
      }

      // Last excursion out of the band decides the settling time.
      double settle = 0.0;
      bool settled = !err_true.empty();
      for (std::size_t i = err_true.size(); i-- > 0;) {
        if (std::abs(err_true[i]) > kSettleBandDeg) {
          if (i + 1 < err_true.size()) {
            settle = err_t[i + 1];
          } else {
            settled = false;
          }
          break;
        }
      }
      cell.settled = settled;
      cell.settle_time_s = settled ? settle : std::numeric_limits<double>::infinity();
      if (keep_logs) {
        cell.log.summary = summarize_ticks(cell.log.ticks, cfg.fan.origin, Outcome::Timeout);
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

// ---------------------------------------------------------------------------
// batch: seeded Monte Carlo seek trials
// ---------------------------------------------------------------------------

struct BatchRow {
  int trial = 0;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::Timeout;
  double time_s = 0.0;
  double path_length_m = 0.0;
  double final_distance_m = 0.0;
};

struct BatchResult {
  std::vector<BatchRow> rows;
  int successes = 0;
  double success_rate = 0.0;
  double median_success_time_s = std::numeric_limits<double>::quiet_NaN();
};

inline std::string write_batch_summary_csv(const BatchResult& r) {
  std::string out = "trial,seed,outcome,time_s,path_len_m,final_dist_m\n";
  for (const BatchRow& row : r.rows) {
    out += std::to_string(row.trial);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += to_string(row.outcome);
    out += ',';
    out += fmt_g6(row.time_s);
    out += ',';
    out += fmt_g6(row.path_length_m);
    out += ',';
    out += fmt_g6(row.final_distance_m);
    out += '\n';
  }
  return out;
}

/// Run `cfg.trials` seeded trials with randomized start poses. The optional
/// sink receives each finished trial (for log/SVG emission).
inline BatchResult run_batch(const ScenarioConfig& cfg,
                             const std::function<void(int, const TrialResult&)>& sink = {}) {
  cfg.validate();
  BatchResult result;
  std::vector<double> success_times;

  for (int i = 0; i < cfg.trials; ++i) {
    const std::uint64_t trial_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(i));
    RngStream pose_rng(trial_seed);
    const QuadState start = random_start(cfg, pose_rng);
    const TrialResult trial = run_trial(cfg, start, derive_seed(trial_seed, 1));

    BatchRow row;
    row.trial = i;
    row.seed = trial_seed;
    row.outcome = trial.outcome;
    row.time_s = trial.log.summary.completion_s;
    row.path_length_m = trial.log.summary.path_length_m;
    row.final_distance_m = trial.log.summary.final_distance_m;
    result.rows.push_back(row);

    if (trial.outcome == Outcome::Success) {
      ++result.successes;
      success_times.push_back(row.time_s);
    }
    if (sink) sink(i, trial);
  }

  result.success_rate = static_cast<double>(result.successes) / cfg.trials;
  if (!success_times.empty()) {
    std::sort(success_times.begin(), success_times.end());
    const std::size_t n = success_times.size();
    result.median_success_time_s =
        n % 2 ? success_times[n / 2] : 0.5 * (success_times[n / 2 - 1] + success_times[n / 2]);
  }
  return result;
}

// ---------------------------------------------------------------------------
// replay: offline calibration + pipeline over a recorded sample stream
// ---------------------------------------------------------------------------

struct ReplayEstimate {
  double t = 0.0;
  double theta = 0.0;
  double mag = 0.0;
  bool detected = false;
};

inline std::vector<ReplayEstimate> run_replay(const std::vector<FlowSample>& samples,
                                              const ScenarioConfig& cfg) {
  if (samples.empty()) throw ParseError("replay: no samples");
  const double t0 = samples.front().t;
  std::vector<FlowSample> calib_window;
  std::size_t i = 0;
  while (i < samples.size() && samples[i].t - t0 < cfg.calibration_s) {
    calib_window.push_back(samples[i]);
    ++i;
  }
  if (calib_window.empty()) throw ParseError("replay: calibration window is empty");
  FlowPipeline pipeline(cfg.filter_window, calibrate(calib_window), cfg.detect_threshold_mT);
  std::vector<ReplayEstimate> out;
  for (; i < samples.size(); ++i) {
    const FlowEstimate e = pipeline.estimate(samples[i]);
    out.push_back({samples[i].t, e.theta, e.magnitude, e.detected});
  }
  return out;
}

inline std::string write_replay_csv(const std::vector<ReplayEstimate>& estimates) {
  std::string out = "t_s,theta_deg,mag_mT,detected\n";
  for (const ReplayEstimate& e : estimates) {
    out += fmt_exact(e.t);
    out += ',';
    out += fmt_exact(e.theta);
    out += ',';
    out += fmt_exact(e.mag);
    out += ',';
    out += e.detected ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace flowseek
