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
#include <vector>

#include <nlohmann/json.hpp>

#include "groundmem/io/bundle.h"
#include "groundmem/mask/mask_filters.h"
#include "groundmem/mask/segmenter.h"

namespace groundmem {

struct OverlapConfig {
  // Conflicts smaller than this fraction of the image go to the larger mask
  // without a segmenter query.
  double min_region_fraction = 0.0005;
  // Masks shrunk below this fraction of the image are dropped.
  double min_area_fraction = 0.001;
};

enum class OverlapOutcome {
  kAssignedByArea,
  kAssignedByReprompt,
  kUnresolved,
};

struct OverlapEvent {
  int frame_index = 0;
  size_t first = 0;   // input indices, first < second
  size_t second = 0;
  int64_t pixels = 0;
  PixelRect crop;
  OverlapOutcome outcome = OverlapOutcome::kUnresolved;
  size_t winner = 0;
  double first_confidence = 0.0;
  double second_confidence = 0.0;
  bool tie = false;
  std::string error;

  nlohmann::json ToJson() const;
};

struct OverlapResolution {
  std::vector<MaskRecord> masks;        // survivors, input order
  std::vector<OverlapEvent> events;
  std::vector<size_t> dropped;          // input indices removed for size
};

// Resolves pixels claimed by masks of different labels in the same frame.
// Each conflicting pair is handled once, in ascending index order. Conflicts
// of at least min_region_fraction of the image are re-queried over their
// bounding crop with both labels; the label with the highest proposal
// confidence keeps the pixels. Confidence ties go to the mask with the larger
// original area and are flagged. When the segmenter is null or fails, the
// pair stays overlapping and the event is marked unresolved.
OverlapResolution ResolveOverlaps(const std::vector<MaskRecord>& masks, ImageSize image,
                                  Segmenter* segmenter, const OverlapConfig& cfg = {});

}  // namespace groundmem
