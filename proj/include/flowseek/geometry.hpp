#pragma once

#include <cmath>
#include <stdexcept>

// Angle and frame conventions shared by the whole library.
//
// World frame: right-handed, z-up. yaw = 0 points along world +X and
// positive yaw is counter-clockwise seen from above. Body frame: +X out
// the vehicle front, +Y out the left side. All public angles are degrees;
// radians appear only inside trig calls.

namespace flowseek {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegPerRad = 180.0 / kPi;
inline constexpr double kRadPerDeg = kPi / 180.0;

/// Wrap an angle into [0, 360). Idempotent.
inline double wrap360(double deg) {
  if (!std::isfinite(deg)) {
    throw std::invalid_argument("wrap360: non-finite angle");
  }
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r = 0.0;  // fmod rounding can land exactly on 360
  return r;
}

/// Wrap an angle into (-180, 180]. Idempotent.
inline double wrap180(double deg) {
  if (!std::isfinite(deg)) {
    throw std::invalid_argument("wrap180: non-finite angle");
  }
  return 180.0 - wrap360(180.0 - deg);
}

/// Planar vector. Units depend on context (meters, m/s, or mT).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  /// z-component of the 3D cross product (this x o).
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

/// Unit vector at a world bearing in degrees.
inline Vec2 unit_from_bearing(double deg) {
  const double r = deg * kRadPerDeg;
  return {std::cos(r), std::sin(r)};
}

/// World bearing of a non-zero vector, in [0, 360).
inline double bearing_of(Vec2 v) {
  if (v.x == 0.0 && v.y == 0.0) {
    throw std::domain_error("bearing_of: zero vector has no bearing");
  }
  return wrap360(std::atan2(v.y, v.x) * kDegPerRad);
}

/// Rotate a vector by an angle (CCW positive).
inline Vec2 rotated(Vec2 v, double deg) {
  const double r = deg * kRadPerDeg;
  const double c = std::cos(r);
  const double s = std::sin(r);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

inline Vec2 body_to_world(Vec2 v_body, double yaw_deg) {
  if (!v_body.finite() || !std::isfinite(yaw_deg)) {
    throw std::invalid_argument("body_to_world: non-finite input");
  }
  return rotated(v_body, yaw_deg);
}

/// Rotation by -yaw; preserves the Euclidean norm.
inline Vec2 world_to_body(Vec2 v_world, double yaw_deg) {
  if (!v_world.finite() || !std::isfinite(yaw_deg)) {
    throw std::invalid_argument("world_to_body: non-finite input");
  }
  return rotated(v_world, -yaw_deg);
}

}  // namespace flowseek
