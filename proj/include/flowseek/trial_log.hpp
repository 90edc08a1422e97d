#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowseek/flow_pipeline.hpp"
#include "flowseek/geometry.hpp"

// Trial logging: the per-tick record schema, CSV serialization for tick
// logs and raw sample streams, and summary metrics recomputable from the
// ticks alone.

namespace flowseek {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class Outcome { Success, Timeout, Escaped };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Success: return "Success";
    case Outcome::Timeout: return "Timeout";
    case Outcome::Escaped: return "Escaped";
  }
  return "?";
}

/// One row of the tick log.
struct Tick {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  double bx = 0.0;          ///< raw sample, mT
  double by = 0.0;          ///< raw sample, mT
  double theta = 0.0;       ///< filtered source bearing, deg
  double mag = 0.0;         ///< filtered magnitude, mT
  bool detected = false;
  std::string phase;        ///< FSM phase or scenario label
  double cmd_vx = 0.0;
  double cmd_vy = 0.0;
  double cmd_yawrate = 0.0;
};

struct TrialSummary {
  Outcome outcome = Outcome::Timeout;
  double completion_s = 0.0;
  double final_distance_m = 0.0;
  double path_length_m = 0.0;
};

struct TrialLog {
  std::vector<Tick> ticks;
  TrialSummary summary;
};

inline constexpr const char* kTickHeader =
    "t_s,x_m,y_m,yaw_deg,bx_mT,by_mT,theta_deg,mag_mT,detected,phase,cmd_vx,cmd_vy,cmd_yawrate";
inline constexpr const char* kSampleHeader = "t_s,bx_mT,by_mT";

/// 6-significant-digit float formatting shared by every CSV writer so that
/// identical runs produce identical bytes.
inline std::string fmt_g6(double v) {
  if (v == 0.0) return "0";  // avoid "-0"
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// Full-precision formatting for streams that must round-trip exactly.
inline std::string fmt_exact(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string write_tick_csv(const TrialLog& log) {
  std::string out(kTickHeader);
  out += '\n';
  for (const Tick& k : log.ticks) {
    out += fmt_g6(k.t);
    out += ',';
    out += fmt_g6(k.x);
    out += ',';
    out += fmt_g6(k.y);
    out += ',';
    out += fmt_g6(k.yaw);
    out += ',';
    out += fmt_g6(k.bx);
    out += ',';
    out += fmt_g6(k.by);
    out += ',';
    out += fmt_g6(k.theta);
    out += ',';
    out += fmt_g6(k.mag);
    out += ',';
    out += k.detected ? '1' : '0';
    out += ',';
    out += k.phase;
    out += ',';
    out += fmt_g6(k.cmd_vx);
    out += ',';
    out += fmt_g6(k.cmd_vy);
    out += ',';
    out += fmt_g6(k.cmd_yawrate);
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

inline double parse_double(const std::string& s, std::size_t line_no, const char* field) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line_no) + ": bad value for " + field + ": '" + s +
                     "'");
  }
  return v;
}

}  // namespace detail

inline std::vector<Tick> parse_tick_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<Tick> ticks;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kTickHeader) throw ParseError("line 1: unexpected tick-log header");
      continue;
    }
    const auto f = detail::split_csv_line(line);
    if (f.size() != 13) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 13 fields, got " +
                       std::to_string(f.size()));
    }
    Tick k;
    k.t = detail::parse_double(f[0], line_no, "t_s");
    k.x = detail::parse_double(f[1], line_no, "x_m");
    k.y = detail::parse_double(f[2], line_no, "y_m");
    k.yaw = detail::parse_double(f[3], line_no, "yaw_deg");
    k.bx = detail::parse_double(f[4], line_no, "bx_mT");
    k.by = detail::parse_double(f[5], line_no, "by_mT");
    k.theta = detail::parse_double(f[6], line_no, "theta_deg");
    k.mag = detail::parse_double(f[7], line_no, "mag_mT");
    if (f[8] != "0" && f[8] != "1") {
      throw ParseError("line " + std::to_string(line_no) + ": detected must be 0 or 1");
    }
    k.detected = f[8] == "1";
    k.phase = f[9];
    k.cmd_vx = detail::parse_double(f[10], line_no, "cmd_vx");
    k.cmd_vy = detail::parse_double(f[11], line_no, "cmd_vy");
    k.cmd_yawrate = detail::parse_double(f[12], line_no, "cmd_yawrate");
    ticks.push_back(std::move(k));
  }
  return ticks;
}

/// Raw sample stream in the replay input schema. Written at full precision
/// so offline replay reproduces the live pipeline bit for bit.
inline std::string write_sample_csv(const std::vector<FlowSample>& samples) {
  std::string out(kSampleHeader);
  out += '\n';
  for (const FlowSample& s : samples) {
    out += fmt_exact(s.t);
    out += ',';
    out += fmt_exact(s.bx);
    out += ',';
    out += fmt_exact(s.by);
    out += '\n';
  }
  return out;
}

inline std::vector<FlowSample> parse_sample_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<FlowSample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kSampleHeader) {
        throw ParseError("line 1: expected header '" + std::string(kSampleHeader) + "'");
      }
      continue;
    }
    const auto f = detail::split_csv_line(line);
    if (f.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                       std::to_string(f.size()));
    }
    FlowSample s;
    s.t = detail::parse_double(f[0], line_no, "t_s");
    s.bx = detail::parse_double(f[1], line_no, "bx_mT");
    s.by = detail::parse_double(f[2], line_no, "by_mT");
    if (!samples.empty() && !(s.t > samples.back().t)) {
      throw ParseError("line " + std::to_string(line_no) + ": timestamps must be strictly increasing");
    }
    samples.push_back(s);
  }
  if (samples.empty()) throw ParseError("no samples in file");
  return samples;
}

/// Summary metrics from tick data alone; the stored summary must match.
inline TrialSummary summarize_ticks(const std::vector<Tick>& ticks, Vec2 fan_origin,
                                    Outcome outcome) {
  TrialSummary s;
  s.outcome = outcome;
  if (ticks.empty()) return s;
  s.completion_s = ticks.back().t;
  s.final_distance_m = (Vec2{ticks.back().x, ticks.back().y} - fan_origin).norm();
  double len = 0.0;
  for (std::size_t i = 1; i < ticks.size(); ++i) {
    len += (Vec2{ticks[i].x, ticks[i].y} - Vec2{ticks[i - 1].x, ticks[i - 1].y}).norm();
  }
  s.path_length_m = len;
  return s;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace flowseek
