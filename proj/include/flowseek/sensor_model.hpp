#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flowseek/flow_pipeline.hpp"
#include "flowseek/geometry.hpp"
#include "flowseek/rng.hpp"
#include "flowseek/vehicle.hpp"

// Synthetic whisker flow sensor. The fin deflects downstream of the
// apparent wind (ambient wind minus vehicle velocity), so the body-frame
// deflection points along the direction the air travels; the +180 in the
// pipeline's bearing formula turns that into the source bearing.

namespace flowseek {

/// Detection threshold from the flight experiments: 120% of the largest
/// magnitude the sensor reports from self-motion at the 0.2 m/s command
/// limit.
inline constexpr double kDetectThresholdMT = 4.6;

struct SensorParams {
  double exponent_p = 1.0;     ///< response law m = gain_c * v^p
  double gain_c = 0.0;         ///< mT * (s/m)^p; <= 0 means "derive from the calibration constraint"
  double saturation_mT = 60.0;
  double noise_sigma_mT = 0.5;  ///< additive Gaussian per channel
  double sample_rate_hz = 40.0;

  /// gain_c such that the response at 0.2 m/s equals 4.6/1.2 mT, keeping
  /// the casting threshold exactly 120% of the self-motion magnitude for
  /// any exponent.
  double effective_gain() const {
    if (gain_c > 0.0) return gain_c;
    return (kDetectThresholdMT / 1.2) / std::pow(0.2, exponent_p);
  }

  void validate() const {
    if (!(exponent_p > 0.0)) throw std::invalid_argument("sensor.exponent_p: must be > 0");
    if (!(effective_gain() > 0.0)) throw std::invalid_argument("sensor.gain_c: must be > 0");
    if (!(saturation_mT > 0.0)) throw std::invalid_argument("sensor.saturation_mT: must be > 0");
    if (!(noise_sigma_mT >= 0.0)) {
      throw std::invalid_argument("sensor.noise_sigma_mT: must be >= 0");
    }
    if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("sensor.sample_rate_hz: must be > 0");
  }
};

/// Wind experienced by a body-mounted sensor: ambient minus vehicle motion.
inline Vec2 apparent_wind(Vec2 w_ambient, Vec2 v_quad) { return w_ambient - v_quad; }

/// Deflection magnitude for an airflow speed, clamped at saturation.
inline double magnitude_response(double speed_mps, const SensorParams& p) {
  if (!(speed_mps >= 0.0)) {
    throw std::invalid_argument("magnitude_response: speed must be >= 0");
  }
  return std::min(p.effective_gain() * std::pow(speed_mps, p.exponent_p), p.saturation_mT);
}

/// One noisy body-frame sample at the vehicle's current state.
inline FlowSample sample(Vec2 w_ambient, const QuadState& quad, const SensorParams& p,
                         RngStream& rng) {
  const Vec2 app = apparent_wind(w_ambient, quad.vel);
  const double speed = app.norm();
  Vec2 defl{0.0, 0.0};
  if (speed > 0.0) {
    const Vec2 dir_body = world_to_body(app * (1.0 / speed), quad.yaw);
    defl = dir_body * magnitude_response(speed, p);
  }
  if (p.noise_sigma_mT > 0.0) {
    defl.x += rng.normal(p.noise_sigma_mT);
    defl.y += rng.normal(p.noise_sigma_mT);
  }
  return {quad.t, defl.x, defl.y};
}

}  // namespace flowseek
