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

#include <nlohmann/json.hpp>

#include "groundmem/geometry/box.h"
#include "groundmem/lift/clean.h"
#include "groundmem/lift/lift.h"
#include "groundmem/mask/mask_filters.h"
#include "groundmem/mask/overlap_resolver.h"

namespace groundmem {

struct AssociationConfig {
  double tau = 0.25;
  double voxel = 0.05;
  int min_support = 50;
  double bev_iou = 0.5;
  LiftSource lift_source = LiftSource::kPointMap;
};

enum class FrameScoring {
  kVolumetric,  // 3D coverage of the region
  kMaskArea,    // 2D mask area of the instance label (baseline)
};

struct RetrievalConfig {
  double voxel = 0.10;
  int k = 4;
  FrameScoring scoring = FrameScoring::kVolumetric;
};

enum class OrchestrationMode {
  kMultiAgent,  // planner delegates to grounding / coding agents
  kToolUse,     // one model drives every tool directly
};

struct LimitsConfig {
  int max_steps = 12;
  int coding_rounds = 5;
  int client_retries = 2;
  int backoff_ms = 500;
  double executor_timeout_s = 20.0;
  std::string interpreter = "python3";
};

struct BrowseConfig {
  int sample_count = 8;
};

// Every tunable of the engine in one document. JSON form uses degrees for
// the yaw step; everything else is in SI units.
struct EngineConfig {
  AssociationConfig association;
  FilterConfig filter;
  double overlap_min_region_fraction = 0.0005;
  CleanConfig clean;
  YawFitConfig yaw;
  RetrievalConfig retrieval;
  LimitsConfig limits;
  BrowseConfig browse;
  OrchestrationMode mode = OrchestrationMode::kMultiAgent;

  OverlapConfig Overlap() const {
    return {overlap_min_region_fraction, filter.min_area_fraction};
  }

  // Throws InvalidArgumentError naming the first out-of-range field.
  void Validate() const;

  nlohmann::json ToJson() const;
  // Starts from the defaults and overrides every key present in `j`.
  // Unknown keys are rejected.
  static EngineConfig FromJson(const nlohmann::json& j);
  static EngineConfig Load(const std::string& path);
};

}  // namespace groundmem
