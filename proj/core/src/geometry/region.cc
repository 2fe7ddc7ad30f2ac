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

#include "groundmem/geometry/region.h"

#include <cmath>
#include <cstdio>

#include "groundmem/error.h"

namespace groundmem {
namespace {

std::string FormatVec(const Vec3& v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", v.x(), v.y(), v.z());
  return buf;
}

}  // namespace

FrontRegion::FrontRegion(const Vec3& anchor, const Vec3& direction, double depth,
                         double half_width, double min_height)
    : anchor_(anchor),
      direction_(direction),
      depth_(depth),
      half_width_(half_width),
      min_height_(min_height) {
  const double horizontal = std::hypot(direction.x(), direction.y());
  if (!(horizontal > 0.0) || !std::isfinite(horizontal)) {
    throw InvalidArgumentError("front region direction has no horizontal component");
  }
  if (!anchor.allFinite()) throw InvalidArgumentError("front region anchor is not finite");
  if (!(depth >= 0.0) || !(half_width >= 0.0)) {
    throw InvalidArgumentError("front region extents must be non-negative");
  }
  front_ = Vec3(direction.x() / horizontal, direction.y() / horizontal, 0.0);
  lat_ = Vec3(-front_.y(), front_.x(), 0.0);
}

std::string Region::Describe() const {
  if (const Aabb* box = AsBox()) {
    return "box:" + FormatVec(box->min) + ":" + FormatVec(box->max);
  }
  const FrontRegion& f = *AsFront();
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", f.depth(), f.half_width(),
                f.min_height());
  return "front:" + FormatVec(f.anchor()) + ":" + FormatVec(f.front_axis()) + ":" + buf;
}

}  // namespace groundmem
