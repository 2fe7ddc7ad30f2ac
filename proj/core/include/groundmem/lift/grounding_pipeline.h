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

#include "groundmem/config.h"
#include "groundmem/io/bundle.h"
#include "groundmem/lift/instance.h"
#include "groundmem/mask/overlap_resolver.h"
#include "groundmem/mask/segmenter.h"

namespace groundmem {

inline constexpr char kMirrorLabel[] = "mirror";

struct GroundingOptions {
  std::vector<std::string> labels;
  // Used for overlap re-prompting; may be null.
  Segmenter* segmenter = nullptr;
  // Worker threads for the per-frame stages. Association stays serial.
  int jobs = 1;
};

struct GroundingStats {
  int masks_in = 0;
  int masks_after_filter = 0;
  int masks_after_dedup = 0;
  int masks_after_mirror = 0;
  int masks_after_overlap = 0;
  int clusters = 0;
  int instances_associated = 0;
  int instances_refined = 0;
  int instances_final = 0;

  nlohmann::json ToJson() const;
};

// One audit line per lifted mask: created / merged / discarded.
struct AuditEntry {
  int frame_index = 0;
  std::string label;
  std::string decision;
  int target_id = -1;
  double score = 0.0;

  nlohmann::json ToJson() const;
};

struct GroundingResult {
  std::vector<Instance> instances;  // ids 0..n-1, boxes fitted
  std::vector<AuditEntry> audit;
  std::vector<OverlapEvent> overlap_events;
  GroundingStats stats;
};

// Masks -> filtering -> duplicate suppression -> mirror policy -> overlap
// re-prompting -> lifting and cleaning -> association in frame order ->
// refinement -> category-wise BEV merging. Masks labeled "mirror" act as
// reflection evidence unless "mirror" itself is requested.
GroundingResult RunGrounding(const SceneBundle& bundle, const GroundingOptions& options,
                             const EngineConfig& config);

}  // namespace groundmem
