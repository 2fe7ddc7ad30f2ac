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

#include "groundmem/io/bundle.h"
#include "groundmem/types.h"

namespace groundmem {

// p = d * K^-1 [u, v, 1]^T for every mask pixel with finite depth d > 0.
// (u, v) is the pixel column/row. Output is in the camera frame.
PointList Backproject(const DepthMap& depth, const Intrinsics& intrinsics,
                      const BinaryMask& mask);

// Reads scene-frame points straight from a point map. When the point map
// resolution differs from the mask, each point-map pixel samples the mask at
// its nearest source pixel. Invalid (NaN) entries are skipped.
PointList LiftFromPointMap(const PointMap& pointmap, const BinaryMask& mask);

enum class LiftSource {
  kPointMap,
  kDepth,  // back-project depth, then apply the camera-to-scene pose if any
};

// Mask pixels -> scene-frame points for one frame.
PointList LiftMask(const FrameRecord& frame, const BinaryMask& mask, LiftSource source);

}  // namespace groundmem
