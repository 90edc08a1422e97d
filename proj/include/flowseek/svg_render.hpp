#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "flowseek/config.hpp"
#include "flowseek/trial_log.hpp"

// Static SVG rendering of a trial: arena border, fan glyph, one trajectory
// polyline with magnitude-colored markers, and heading arrows subsampled
// at 1 Hz. Output is fully deterministic for identical logs.

namespace flowseek {

namespace svg_detail {

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

/// Blue (low) to red (high) through violet.
inline std::string magnitude_color(double mag, double mag_max) {
  const double u = mag_max > 0.0 ? std::clamp(mag / mag_max, 0.0, 1.0) : 0.0;
  const int r = static_cast<int>(std::lround(40 + 215 * u));
  const int g = 40;
  const int b = static_cast<int>(std::lround(220 - 180 * u));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", r, g, b);
  return buf;
}

}  // namespace svg_detail

inline std::string render_svg(const TrialLog& log, const ScenarioConfig& cfg) {
  using svg_detail::magnitude_color;
  using svg_detail::px;
  if (log.ticks.empty()) throw std::invalid_argument("render_svg: empty log");

  constexpr double kScale = 60.0;  // px per meter
  constexpr double kMargin = 30.0;
  const double w = cfg.arena_width_m * kScale + 2 * kMargin;
  const double h = cfg.arena_height_m * kScale + 2 * kMargin;
  // SVG y grows downward; world y grows upward.
  const auto X = [&](double x) { return kMargin + x * kScale; };
  const auto Y = [&](double y) { return h - (kMargin + y * kScale); };

  double mag_max = 0.0;
  for (const Tick& k : log.ticks) mag_max = std::max(mag_max, k.mag);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(w) + "\" height=\"" + px(h) +
       "\" viewBox=\"0 0 " + px(w) + " " + px(h) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + px(w) + "\" height=\"" + px(h) +
       "\" fill=\"#ffffff\"/>\n";

  // Arena border.
  s += "<rect x=\"" + px(X(0)) + "\" y=\"" + px(Y(cfg.arena_height_m)) + "\" width=\"" +
       px(cfg.arena_width_m * kScale) + "\" height=\"" + px(cfg.arena_height_m * kScale) +
       "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"2\"/>\n";

  // Fan glyph: circle plus a heading chevron along the plume axis.
  const Vec2 fo = cfg.fan.origin;
  const Vec2 axis = unit_from_bearing(cfg.fan.heading_deg);
  s += "<g id=\"fan\">\n";
  s += "<circle cx=\"" + px(X(fo.x)) + "\" cy=\"" + px(Y(fo.y)) +
       "\" r=\"8\" fill=\"#222222\"/>\n";
  const Vec2 tip = fo + axis * 0.5;
  s += "<line x1=\"" + px(X(fo.x)) + "\" y1=\"" + px(Y(fo.y)) + "\" x2=\"" + px(X(tip.x)) +
       "\" y2=\"" + px(Y(tip.y)) + "\" stroke=\"#222222\" stroke-width=\"3\"/>\n";
  s += "</g>\n";

  if (log.ticks.size() >= 2) {
    s += "<polyline fill=\"none\" stroke=\"#888888\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < log.ticks.size(); ++i) {
      if (i) s += ' ';
      s += px(X(log.ticks[i].x)) + "," + px(Y(log.ticks[i].y));
    }
    s += "\"/>\n";
  } else {
    s += "<circle cx=\"" + px(X(log.ticks[0].x)) + "\" cy=\"" + px(Y(log.ticks[0].y)) +
         "\" r=\"4\" fill=\"#888888\"/>\n";
  }

  // Magnitude markers at 2 Hz, heading arrows at 1 Hz.
  const double dt = log.ticks.size() >= 2 ? log.ticks[1].t - log.ticks[0].t : 1.0;
  const std::size_t marker_stride = std::max<std::size_t>(1, static_cast<std::size_t>(0.5 / dt));
  const std::size_t arrow_stride = std::max<std::size_t>(1, static_cast<std::size_t>(1.0 / dt));
  for (std::size_t i = 0; i < log.ticks.size(); i += marker_stride) {
    const Tick& k = log.ticks[i];
    s += "<circle cx=\"" + px(X(k.x)) + "\" cy=\"" + px(Y(k.y)) + "\" r=\"2\" fill=\"" +
         magnitude_color(k.mag, mag_max) + "\"/>\n";
  }
  for (std::size_t i = 0; i < log.ticks.size(); i += arrow_stride) {
    const Tick& k = log.ticks[i];
    const Vec2 dir = unit_from_bearing(k.yaw);
    const Vec2 from{k.x, k.y};
    const Vec2 to = from + dir * 0.25;
    const Vec2 left = to - rotated(dir, 25.0) * 0.08;
    const Vec2 right = to - rotated(dir, -25.0) * 0.08;
    s += "<line x1=\"" + px(X(from.x)) + "\" y1=\"" + px(Y(from.y)) + "\" x2=\"" + px(X(to.x)) +
         "\" y2=\"" + px(Y(to.y)) + "\" stroke=\"#2a6e2a\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + px(X(to.x)) + "\" y1=\"" + px(Y(to.y)) + "\" x2=\"" + px(X(left.x)) +
         "\" y2=\"" + px(Y(left.y)) + "\" stroke=\"#2a6e2a\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + px(X(to.x)) + "\" y1=\"" + px(Y(to.y)) + "\" x2=\"" + px(X(right.x)) +
         "\" y2=\"" + px(Y(right.y)) + "\" stroke=\"#2a6e2a\" stroke-width=\"1\"/>\n";
  }

  s += "</svg>\n";
  return s;
}

}  // namespace flowseek
