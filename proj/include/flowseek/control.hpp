#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flowseek/geometry.hpp"

// PD yaw controller servoing the vehicle front onto the measured flow
// source bearing, and the reorientation-complete detector.

namespace flowseek {

struct PdGains {
  double kp = 0.6;   ///< (deg/s) per deg
  double kd = 0.08;  ///< (deg/s) per (deg/s)

  void validate() const {
    if (!(kp > 0.0)) throw std::invalid_argument("control.kp: must be > 0");
    if (!(kd >= 0.0)) throw std::invalid_argument("control.kd: must be >= 0");
  }
};

/// Pure PD law on the wrapped bearing error. theta = 0 means the source is
/// dead ahead; the wrap to (-180, 180] makes the command turn the short way
/// and breaks the 180-degree tie toward counter-clockwise.
inline double yaw_rate_cmd(double theta_deg, double prev_error_deg, bool has_prev, double dt,
                           const PdGains& g, double rate_limit_dps) {
  if (!(dt > 0.0)) throw std::invalid_argument("yaw_rate_cmd: dt must be > 0");
  const double e = wrap180(theta_deg);
  const double de = has_prev ? wrap180(e - prev_error_deg) / dt : 0.0;
  const double u = g.kp * e + g.kd * de;
  return std::clamp(u, -rate_limit_dps, rate_limit_dps);
}

/// Stateful wrapper owning the previous error. One control loop per owner.
class YawController {
 public:
  YawController(PdGains gains, double rate_limit_dps)
      : gains_(gains), rate_limit_(rate_limit_dps) {}

  double update(double theta_deg, double dt) {
    const double u = yaw_rate_cmd(theta_deg, prev_error_, has_prev_, dt, gains_, rate_limit_);
    prev_error_ = wrap180(theta_deg);
    has_prev_ = true;
    return u;
  }

  void reset() { has_prev_ = false; }
  double last_error() const { return prev_error_; }

 private:
  PdGains gains_;
  double rate_limit_;
  double prev_error_ = 0.0;
  bool has_prev_ = false;
};

/// Declares reorientation complete once |error| has stayed within the
/// tolerance for the full hold time.
class ReorientMonitor {
 public:
  ReorientMonitor(double tolerance_deg = 20.0, double hold_time_s = 1.0)
      : tol_(tolerance_deg), hold_(hold_time_s) {
    if (!(tol_ > 0.0)) throw std::invalid_argument("control.reorient_tolerance_deg: must be > 0");
    if (!(hold_ >= 0.0)) throw std::invalid_argument("control.reorient_hold_s: must be >= 0");
  }

  bool update(double error_deg, double dt) {
    held_ = (std::abs(wrap180(error_deg)) <= tol_) ? held_ + dt : 0.0;
    return done();
  }

  bool done() const { return held_ >= hold_; }
  void reset() { held_ = 0.0; }

 private:
  double tol_;
  double hold_;
  double held_ = 0.0;
};

}  // namespace flowseek
