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

#include "groundmem/lift/lift.h"

#include <cmath>

#include "groundmem/error.h"

namespace groundmem {

PointList Backproject(const DepthMap& depth, const Intrinsics& intrinsics,
                      const BinaryMask& mask) {
  if (int(depth.width) != mask.width() || int(depth.height) != mask.height()) {
    throw InvalidArgumentError("depth and mask dimensions differ");
  }
  if (!intrinsics.IsValid()) throw InvalidArgumentError("invalid intrinsics");
  PointList out;
  for (int v = 0; v < mask.height(); ++v) {
    for (int u = 0; u < mask.width(); ++u) {
      if (!mask.Get(u, v)) continue;
      const double d = depth.At(uint32_t(v), uint32_t(u));
      if (!std::isfinite(d) || d <= 0.0) continue;
      out.emplace_back(d * (u - intrinsics.cx) / intrinsics.fx,
                       d * (v - intrinsics.cy) / intrinsics.fy, d);
    }
  }
  return out;
}

PointList LiftFromPointMap(const PointMap& pointmap, const BinaryMask& mask) {
  PointList out;
  if (mask.width() == 0 || mask.height() == 0) return out;
  const bool same = int(pointmap.width) == mask.width() && int(pointmap.height) == mask.height();
  const double sx = double(mask.width()) / double(pointmap.width);
  const double sy = double(mask.height()) / double(pointmap.height);
  for (uint32_t row = 0; row < pointmap.height; ++row) {
    const int my = same ? int(row)
                        : std::min(mask.height() - 1, int(std::floor((row + 0.5) * sy)));
    for (uint32_t col = 0; col < pointmap.width; ++col) {
      const int mx = same ? int(col)
                          : std::min(mask.width() - 1, int(std::floor((col + 0.5) * sx)));
      if (!mask.Get(mx, my) || !pointmap.IsValid(row, col)) continue;
      out.push_back(pointmap.At(row, col));
    }
  }
  return out;
}

PointList LiftMask(const FrameRecord& frame, const BinaryMask& mask, LiftSource source) {
  if (source == LiftSource::kDepth && frame.depth) {
    PointList pts = Backproject(*frame.depth, frame.intrinsics, mask);
    if (frame.pose) {
      const Mat4& T = *frame.pose;
      for (Vec3& p : pts) p = T.topLeftCorner<3, 3>() * p + T.topRightCorner<3, 1>();
    }
    return pts;
  }
  if (!frame.pointmap) {
    throw InvalidArgumentError("frame " + std::to_string(frame.frame_index) +
                               " has no point map");
  }
  return LiftFromPointMap(*frame.pointmap, mask);
}

}  // namespace groundmem
