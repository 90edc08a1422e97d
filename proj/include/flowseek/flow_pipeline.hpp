#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "flowseek/geometry.hpp"

// Raw whisker-sensor samples to calibrated flow estimates: bias removal,
// moving-average filter, source bearing and magnitude, detection flag.

namespace flowseek {

/// One raw sensor reading: magnetic deflection components in mT.
struct FlowSample {
  double t = 0.0;   ///< seconds; strictly increasing within a stream
  double bx = 0.0;  ///< mT, body-frame X
  double by = 0.0;  ///< mT, body-frame Y
};

/// Per-channel offset measured in hover before the fan is active.
struct CalibrationBias {
  double bias_x = 0.0;
  double bias_y = 0.0;
  std::size_t sample_count = 0;

  bool valid() const { return sample_count >= 1; }
};

/// Mean of the samples. Throws if the sequence is empty.
inline CalibrationBias calibrate(const std::vector<FlowSample>& samples) {
  if (samples.empty()) {
    throw std::runtime_error("calibrate: no samples in calibration window");
  }
  double sx = 0.0, sy = 0.0;
  for (const FlowSample& s : samples) {
    sx += s.bx;
    sy += s.by;
  }
  const double n = static_cast<double>(samples.size());
  return {sx / n, sy / n, samples.size()};
}

/// Trailing moving average. With fewer than `window` samples the output is
/// the mean of the samples seen so far, so there is no startup transient
/// from implicit zeros.
class MovingAverage {
 public:
  explicit MovingAverage(std::size_t window = 10) : buf_(window, 0.0) {
    if (window == 0) throw std::invalid_argument("MovingAverage: window must be >= 1");
  }

  double update(double x) {
    buf_[head_] = x;
    head_ = (head_ + 1) % buf_.size();
    if (count_ < buf_.size()) ++count_;
    // Recompute instead of keeping a running sum: a 10-wide window is cheap
    // and the output stays exact for the filter-property tests.
    double sum = 0.0;
    for (std::size_t i = 0; i < count_; ++i) sum += buf_[i];
    return sum / static_cast<double>(count_);
  }

  void reset() {
    head_ = 0;
    count_ = 0;
  }

  std::size_t window() const { return buf_.size(); }
  std::size_t count() const { return count_; }

 private:
  std::vector<double> buf_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
};

/// Source bearing from a body-frame deflection: atan2(y, x) + 180, wrapped
/// to [0, 360). The deflection points downstream, so the +180 turns it into
/// the bearing of the airflow source (0 = dead ahead).
inline double flow_angle(Vec2 deflection) {
  if (deflection.x == 0.0 && deflection.y == 0.0) {
    throw std::domain_error("flow_angle: zero deflection has no bearing");
  }
  return wrap360(std::atan2(deflection.y, deflection.x) * kDegPerRad + 180.0);
}

inline double flow_magnitude(Vec2 deflection) { return deflection.norm(); }

/// Filtered flow estimate. When magnitude is zero theta is reported as 0
/// and must be ignored; `detected` gates every consumer.
struct FlowEstimate {
  double theta = 0.0;      ///< deg, source bearing in body frame, [0, 360)
  double magnitude = 0.0;  ///< mT
  bool detected = false;   ///< magnitude >= detection threshold
};

/// Streaming pipeline: one instance per sample stream.
class FlowPipeline {
 public:
  FlowPipeline(std::size_t window, CalibrationBias bias, double detect_threshold)
      : fx_(window), fy_(window), bias_(bias), threshold_(detect_threshold) {
    if (!bias.valid()) throw std::invalid_argument("FlowPipeline: calibration bias not valid");
    if (!(detect_threshold > 0.0)) {
      throw std::invalid_argument("FlowPipeline: detect_threshold must be > 0");
    }
  }

  /// Bias-correct and filter one sample; returns the filtered deflection.
  Vec2 filter_step(const FlowSample& raw) {
    if (has_prev_t_ && !(raw.t > prev_t_)) {
      throw std::invalid_argument("FlowPipeline: sample timestamps must be strictly increasing");
    }
    prev_t_ = raw.t;
    has_prev_t_ = true;
    return {fx_.update(raw.bx - bias_.bias_x), fy_.update(raw.by - bias_.bias_y)};
  }

  FlowEstimate estimate(const FlowSample& raw) {
    const Vec2 f = filter_step(raw);
    FlowEstimate e;
    e.magnitude = flow_magnitude(f);
    e.theta = (e.magnitude > 0.0) ? flow_angle(f) : 0.0;
    e.detected = e.magnitude >= threshold_;
    return e;
  }

  double detect_threshold() const { return threshold_; }
  const CalibrationBias& bias() const { return bias_; }

 private:
  MovingAverage fx_;
  MovingAverage fy_;
  CalibrationBias bias_;
  double threshold_;
  double prev_t_ = 0.0;
  bool has_prev_t_ = false;
};

}  // namespace flowseek
