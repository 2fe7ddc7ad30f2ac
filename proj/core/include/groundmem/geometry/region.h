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

#include <string>
#include <variant>

#include "groundmem/geometry/box.h"
#include "groundmem/types.h"

namespace groundmem {

// Ground-aligned cuboid in front of an anchor along a horizontal heading.
// With d = p - anchor, a point is inside when
//   0 <= d.front <= depth,  |d.lat| <= half_width,  d.up >= min_height.
// There is no upper height bound.
class FrontRegion {
 public:
  static constexpr double kDefaultDepth = 3.0;
  static constexpr double kDefaultHalfWidth = 1.5;
  static constexpr double kDefaultMinHeight = 0.1;

  // Throws InvalidArgumentError when `direction` has no horizontal component.
  FrontRegion(const Vec3& anchor, const Vec3& direction, double depth = kDefaultDepth,
              double half_width = kDefaultHalfWidth,
              double min_height = kDefaultMinHeight);

  bool Contains(const Vec3& p) const {
    const Vec3 d = p - anchor_;
    const double front = d.dot(front_);
    const double lat = d.dot(lat_);
    const double up = d.z();
    return front >= 0.0 && front <= depth_ && std::abs(lat) <= half_width_ &&
           up >= min_height_;
  }

  const Vec3& anchor() const { return anchor_; }
  const Vec3& direction() const { return direction_; }
  const Vec3& front_axis() const { return front_; }
  const Vec3& lateral_axis() const { return lat_; }
  double depth() const { return depth_; }
  double half_width() const { return half_width_; }
  double min_height() const { return min_height_; }

 private:
  Vec3 anchor_;
  Vec3 direction_;
  Vec3 front_;
  Vec3 lat_;
  double depth_;
  double half_width_;
  double min_height_;
};

// A queried 3D volume: an axis-aligned cuboid or a front-facing cuboid.
class Region {
 public:
  explicit Region(const Aabb& box) : shape_(box) {}
  explicit Region(const FrontRegion& front) : shape_(front) {}

  bool Contains(const Vec3& p) const {
    if (const auto* box = std::get_if<Aabb>(&shape_)) return box->Contains(p);
    return std::get<FrontRegion>(shape_).Contains(p);
  }

  bool IsAxisAligned() const { return std::holds_alternative<Aabb>(shape_); }
  const Aabb* AsBox() const { return std::get_if<Aabb>(&shape_); }
  const FrontRegion* AsFront() const { return std::get_if<FrontRegion>(&shape_); }

  // Stable textual identity, usable as a cache key.
  std::string Describe() const;

 private:
  std::variant<Aabb, FrontRegion> shape_;
};

inline bool RegionMembership(const Region& region, const Vec3& p) {
  return region.Contains(p);
}

}  // namespace groundmem
