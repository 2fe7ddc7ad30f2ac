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

#include <Eigen/Core>

#include <cmath>
#include <vector>

namespace groundmem {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat4 = Eigen::Matrix4d;

using PointList = std::vector<Vec3>;

// Pinhole camera intrinsics in pixels.
struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  bool IsValid() const {
    return fx > 0.0 && fy > 0.0 && std::isfinite(fx) && std::isfinite(fy) &&
           std::isfinite(cx) && std::isfinite(cy);
  }

  bool operator==(const Intrinsics&) const = default;
};

}  // namespace groundmem
