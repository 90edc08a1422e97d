#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "flowseek/geometry.hpp"

// Synthetic fan plume anchored to four on-axis anemometer measurements,
// queryable at any planar point. The field is steady: stochasticity enters
// the simulation through sensor noise only.

namespace flowseek {

struct PlumeAnchor {
  double distance_m = 0.0;
  double speed_mps = 0.0;
};

inline std::vector<PlumeAnchor> default_anchors() {
  return {{1.5, 1.24}, {3.0, 0.80}, {4.5, 0.40}, {6.0, 0.20}};
}

/// Fan plume model.
///
/// Axial profile: piecewise log-linear through the anchors. The first
/// segment's slope is continued below the nearest anchor (a jet speeds up
/// toward the nozzle) and the last segment's slope is continued as an
/// exponential tail beyond the farthest anchor, hard-zeroed at
/// `cutoff_m`. The profile argument is radial distance from the fan.
///
/// Cross profile: Gaussian in lateral offset with sigma =
/// max(core_radius_m, axial_dist * tan(half_width_deg)), i.e. Gaussian in
/// off-axis angle away from the fan (speed falls to e^-1/2 at
/// half_width_deg off axis) with the width floored at the fan aperture so
/// the plume does not collapse to a point at the source.
///
/// Direction: radially away from the fan. Speed is exactly zero on and
/// behind the fan plane and beyond the cutoff.
struct FanPlume {
  Vec2 origin{0.0, 0.0};
  double heading_deg = 0.0;  ///< plume axis direction (air travels this way)
  std::vector<PlumeAnchor> anchors = default_anchors();
  double half_width_deg = 15.0;
  double cutoff_m = 9.0;
  double core_radius_m = 0.45;

  void validate() const {
    if (anchors.size() < 2) throw std::invalid_argument("fan.anchors: need at least two anchors");
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      if (!(anchors[i].speed_mps > 0.0)) {
        throw std::invalid_argument("fan.anchors: speeds must be > 0");
      }
      if (i > 0) {
        if (!(anchors[i].distance_m > anchors[i - 1].distance_m)) {
          throw std::invalid_argument("fan.anchors: distances must be strictly increasing");
        }
        if (!(anchors[i].speed_mps < anchors[i - 1].speed_mps)) {
          throw std::invalid_argument("fan.anchors: speeds must be strictly decreasing");
        }
      }
    }
    if (!(half_width_deg > 0.0 && half_width_deg < 90.0)) {
      throw std::invalid_argument("fan.half_width_deg: must be in (0, 90)");
    }
    if (!(cutoff_m > anchors.back().distance_m)) {
      throw std::invalid_argument("fan.cutoff_m: must exceed the farthest anchor");
    }
    if (!(core_radius_m > 0.0)) {
      throw std::invalid_argument("fan.core_radius_m: must be > 0");
    }
  }
};

/// On-axis speed at radial distance `d` from the fan.
inline double axial_speed(const FanPlume& f, double d) {
  if (d >= f.cutoff_m) return 0.0;
  const auto& a = f.anchors;
  // Pick the segment: first for d below a[1], last for d beyond the end.
  std::size_t i = 0;
  while (i + 2 < a.size() && d >= a[i + 1].distance_m) ++i;
  const double d0 = a[i].distance_m, d1 = a[i + 1].distance_m;
  const double t = (d - d0) / (d1 - d0);  // may be < 0 or > 1: extrapolation
  return std::exp(std::log(a[i].speed_mps) +
                  t * (std::log(a[i + 1].speed_mps) - std::log(a[i].speed_mps)));
}

/// World-frame wind velocity at a point, m/s.
inline Vec2 wind_at(const FanPlume& f, Vec2 p) {
  const Vec2 rel = p - f.origin;
  const double r = rel.norm();
  if (r == 0.0 || r >= f.cutoff_m) return {0.0, 0.0};
  const Vec2 axis = unit_from_bearing(f.heading_deg);
  const double along = rel.dot(axis);
  if (along <= 0.0) return {0.0, 0.0};  // on/behind the fan plane
  const double lateral = axis.cross(rel);
  const double sigma = std::max(f.core_radius_m, along * std::tan(f.half_width_deg * kRadPerDeg));
  const double cross = std::exp(-0.5 * (lateral / sigma) * (lateral / sigma));
  const double speed = axial_speed(f, r) * cross;
  return rel * (speed / r);
}

/// World bearing from `p` toward the fan, i.e. straight upwind. Throws
/// where the wind is zero.
inline double upwind_bearing_at(const FanPlume& f, Vec2 p) {
  const Vec2 w = wind_at(f, p);
  if (w.x == 0.0 && w.y == 0.0) {
    throw std::domain_error("upwind_bearing_at: zero wind, bearing undefined");
  }
  return bearing_of(-w);
}

}  // namespace flowseek
