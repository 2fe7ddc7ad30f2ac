// Copyright 2026 The groundmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <numbers>
#include <span>
#include <vector>

#include "groundmem/types.h"

namespace groundmem {

struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  // Tight bounds; throws InvalidArgumentError for an empty span.
  static Aabb FromPoints(std::span<const Vec3> points);

  bool IsValid() const { return (min.array() <= max.array()).all(); }
  bool Contains(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  // Closed-interval overlap test; touching boxes intersect.
  bool Intersects(const Aabb& other) const {
    return (min.array() <= other.max.array()).all() &&
           (other.min.array() <= max.array()).all();
  }
  void Extend(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  void Extend(const Aabb& other) {
    min = min.cwiseMin(other.min);
    max = max.cwiseMax(other.max);
  }
  Vec3 Center() const { return 0.5 * (min + max); }
  Vec3 Size() const { return max - min; }
  double Volume() const { return Size().prod(); }

  bool operator==(const Aabb&) const = default;
};

// Box rotated about +z only. `size` is (length, width, height); length runs
// along (cos yaw, sin yaw, 0). yaw is canonical in [0, pi/2).
struct YawBox {
  Vec3 center = Vec3::Zero();
  Vec3 size = Vec3::Ones();
  double yaw = 0.0;

  // Footprint corners, counter-clockwise.
  std::array<Vec2, 4> BevCorners() const;
  double BevArea() const { return size.x() * size.y(); }
  Aabb BoundingAabb() const;
  bool Contains(const Vec3& p) const;
};

// Folds any yaw onto [0, pi/2), swapping length and width on odd quarter turns.
YawBox CanonicalizeYaw(const YawBox& box);

struct YawFitConfig {
  double angle_step = std::numbers::pi / 180.0;
  // Fraction dropped from each end of every projected axis.
  double trim_fraction = 0.02;
};

// Sizes below this are clamped so planar or trimmed-away extents still give
// a valid box.
inline constexpr double kMinBoxExtent = 1e-6;

// Grid search over yaw in {0, step, 2 step, ...} < pi/2 for the smallest
// trimmed bird's-eye-view rectangle. Equal areas resolve to the smaller yaw.
// Throws DegenerateGeometryError when fewer than three points are given or
// the footprint is collinear.
YawBox FitYawBox(std::span<const Vec3> points, const YawFitConfig& cfg = {});

// Area of the footprint rectangle the fit would report at `yaw`.
double TrimmedBevArea(std::span<const Vec3> points, double yaw, double trim_fraction);

using Polygon2 = std::vector<Vec2>;

double PolygonArea(const Polygon2& poly);
// Intersection of two convex counter-clockwise polygons.
Polygon2 ClipConvex(const Polygon2& subject, const Polygon2& clip);

// Intersection-over-union of the two footprints. Zero-area footprints give 0.
double BevIou(const YawBox& a, const YawBox& b);
double BevIou(const Aabb& a, const Aabb& b);

}  // namespace groundmem
