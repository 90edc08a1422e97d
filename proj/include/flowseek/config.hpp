#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowseek/control.hpp"
#include "flowseek/sensor_model.hpp"
#include "flowseek/vehicle.hpp"
#include "flowseek/vector_surge.hpp"
#include "flowseek/wind_field.hpp"

// Scenario configuration: built-in defaults, a flat `[section] key = value`
// text format, and validation that rejects any parameter violating a
// module invariant with a message naming the parameter.

namespace flowseek {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ScenarioConfig {
  // [arena]
  double arena_width_m = 10.0;
  double arena_height_m = 10.0;

  // [fan]
  FanPlume fan{Vec2{1.0, 5.0}, 0.0};

  // [sensor]
  SensorParams sensor;

  // [pipeline]
  std::size_t filter_window = 10;
  double calibration_s = 2.0;
  double detect_threshold_mT = kDetectThresholdMT;

  // [vehicle]
  VehicleParams vehicle;

  // [control]
  PdGains gains;
  double reorient_tolerance_deg = 20.0;
  double reorient_hold_s = 1.0;

  // [surge]
  SurgeParams surge;

  // [trial]
  double time_limit_s = 120.0;
  double success_radius_m = 1.5;
  double fan_keepout_m = 1.0;
  std::string start_region = "plume";  ///< "plume", "downwind", or "arena"

  // [batch]
  int trials = 50;
  std::uint64_t master_seed = 42;

  // [output]
  std::string out_dir = "out";
  bool write_svg = false;

  /// Surge parameters with the shared detection/calibration values filled in.
  SurgeParams resolved_surge() const {
    SurgeParams s = surge;
    s.detect_threshold_mT = detect_threshold_mT;
    s.calibration_s = calibration_s;
    return s;
  }

  void validate() const {
    if (!(arena_width_m > 0.0)) throw ConfigError("arena.width_m: must be > 0");
    if (!(arena_height_m > 0.0)) throw ConfigError("arena.height_m: must be > 0");
    try {
      fan.validate();
      sensor.validate();
      vehicle.validate();
      gains.validate();
      resolved_surge().validate(sensor);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (filter_window < 1) throw ConfigError("pipeline.filter_window: must be >= 1");
    if (!(calibration_s > 0.0)) throw ConfigError("pipeline.calibration_s: must be > 0");
    if (!(detect_threshold_mT > 0.0)) {
      throw ConfigError("pipeline.detect_threshold_mT: must be > 0");
    }
    if (!(reorient_tolerance_deg > 0.0)) {
      throw ConfigError("control.reorient_tolerance_deg: must be > 0");
    }
    if (!(reorient_hold_s >= 0.0)) throw ConfigError("control.reorient_hold_s: must be >= 0");
    if (!(time_limit_s > 0.0)) throw ConfigError("trial.time_limit_s: must be > 0");
    if (!(success_radius_m > 0.0)) throw ConfigError("trial.success_radius_m: must be > 0");
    if (!(fan_keepout_m >= 0.0)) throw ConfigError("trial.fan_keepout_m: must be >= 0");
    if (start_region != "arena" && start_region != "downwind" && start_region != "plume") {
      throw ConfigError("trial.start_region: must be 'arena', 'downwind' or 'plume'");
    }
    if (trials < 1) throw ConfigError("batch.trials: must be >= 1");
    if (fan.origin.x < 0.0 || fan.origin.x > arena_width_m || fan.origin.y < 0.0 ||
        fan.origin.y > arena_height_m) {
      throw ConfigError("fan.x_m/fan.y_m: fan must be inside the arena");
    }
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') throw ConfigError(key + ": not a number: '" + v + "'");
  return d;
}

inline long to_long(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long n = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') throw ConfigError(key + ": not an integer: '" + v + "'");
  return n;
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key + ": not a boolean: '" + v + "'");
}

/// "d0:s0, d1:s1, ..." -> anchor list.
inline std::vector<PlumeAnchor> to_anchors(const std::string& key, const std::string& v) {
  std::vector<PlumeAnchor> anchors;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError(key + ": expected 'distance:speed' pairs, got '" + item + "'");
    }
    anchors.push_back({to_double(key, trim(item.substr(0, colon))),
                       to_double(key, trim(item.substr(colon + 1)))});
  }
  if (anchors.empty()) throw ConfigError(key + ": empty anchor list");
  return anchors;
}

}  // namespace detail

/// Apply one `section.key = value` setting. Unknown keys are errors.
inline void apply_setting(ScenarioConfig& c, const std::string& section, const std::string& key,
                          const std::string& value) {
  using detail::to_anchors;
  using detail::to_bool;
  using detail::to_double;
  using detail::to_long;
  const std::string q = section + "." + key;
  if (section == "arena") {
    if (key == "width_m") c.arena_width_m = to_double(q, value);
    else if (key == "height_m") c.arena_height_m = to_double(q, value);
    else throw ConfigError("unknown key: " + q);
  } else if (section == "fan") {
    if (key == "x_m") c.fan.origin.x = to_double(q, value);
    else if (key == "y_m") c.fan.origin.y = to_double(q, value);
    else if (key == "heading_deg") c.fan.heading_deg = to_double(q, value);
    else if (key == "half_width_deg") c.fan.half_width_deg = to_double(q, value);
    else if (key == "cutoff_m") c.fan.cutoff_m = to_double(q, value);
    else if (key == "core_radius_m") c.fan.core_radius_m = to_double(q, value);
    else if (key == "anchors") c.fan.anchors = to_anchors(q, value);
    else throw ConfigError("unknown key: " + q);
  } else if (section == "sensor") {
    if (key == "exponent_p") c.sensor.exponent_p = to_double(q, value);
    else if (key == "gain_c") c.sensor.gain_c = to_double(q, value);
    else if (key == "saturation_mT") c.sensor.saturation_mT = to_double(q, value);
    else if (key == "noise_sigma_mT") c.sensor.noise_sigma_mT = to_double(q, value);
    else if (key == "sample_rate_hz") c.sensor.sample_rate_hz = to_double(q, value);
    else throw ConfigError("unknown key: " + q);
  } else if (section == "pipeline") {
    if (key == "filter_window") c.filter_window = static_cast<std::size_t>(to_long(q, value));
    else if (key == "calibration_s") c.calibration_s = to_double(q, value);
    else if (key == "detect_threshold_mT") c.detect_threshold_mT = to_double(q, value);
    else throw ConfigError("unknown key: " + q);
  } else if (section == "vehicle") {
    if (key == "tau_s") c.vehicle.tau_s = to_double(q, value);
    else if (key == "wind_gamma") c.vehicle.wind_gamma = to_double(q, value);
    else if (key == "v_max_mps") c.vehicle.v_max_mps = to_double(q, value);
    else if (key == "yaw_rate_max_dps") c.vehicle.yaw_rate_max_dps = to_double(q, value);
    else throw ConfigError("unknown key: " + q);
  } else if (section == "control") {
    if (key == "kp") c.gains.kp = to_double(q, value);
    else if (key == "kd") c.gains.kd = to_double(q, value);
    else if (key == "reorient_tolerance_deg") c.reorient_tolerance_deg = to_double(q, value);
    else if (key == "reorient_hold_s") c.reorient_hold_s = to_double(q, value);
    else throw ConfigError("unknown key: " + q);
  } else if (section == "surge") {
    if (key == "stop_threshold_mT") c.surge.stop_threshold_mT = to_double(q, value);
    else if (key == "stop_apparent_mps") c.surge.stop_apparent_mps = to_double(q, value);
    else if (key == "loss_fraction") c.surge.loss_fraction = to_double(q, value);
    else if (key == "loss_hold_s") c.surge.loss_hold_s = to_double(q, value);
    else if (key == "cast_base_s") c.surge.cast_base_s = to_double(q, value);
    else if (key == "cast_increment_s") c.surge.cast_increment_s = to_double(q, value);
    else if (key == "cast_speed_mps") c.surge.cast_speed_mps = to_double(q, value);
    else if (key == "surge_speed_mps") c.surge.surge_speed_mps = to_double(q, value);
    else throw ConfigError("unknown key: " + q);
  } else if (section == "trial") {
    if (key == "time_limit_s") c.time_limit_s = to_double(q, value);
    else if (key == "success_radius_m") c.success_radius_m = to_double(q, value);
    else if (key == "fan_keepout_m") c.fan_keepout_m = to_double(q, value);
    else if (key == "start_region") c.start_region = value;
    else throw ConfigError("unknown key: " + q);
  } else if (section == "batch") {
    if (key == "trials") c.trials = static_cast<int>(to_long(q, value));
    else if (key == "master_seed") c.master_seed = static_cast<std::uint64_t>(to_long(q, value));
    else throw ConfigError("unknown key: " + q);
  } else if (section == "output") {
    if (key == "directory") c.out_dir = value;
    else if (key == "write_svg") c.write_svg = to_bool(q, value);
    else throw ConfigError("unknown key: " + q);
  } else {
    throw ConfigError("unknown section: [" + section + "]");
  }
}

/// Parse config text over the defaults. `#` starts a comment; keys belong
/// to the most recent `[section]` header.
inline ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig c;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      }
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key outside any [section]");
    }
    apply_setting(c, section, detail::trim(line.substr(0, eq)),
                  detail::trim(line.substr(eq + 1)));
  }
  return c;
}

}  // namespace flowseek
