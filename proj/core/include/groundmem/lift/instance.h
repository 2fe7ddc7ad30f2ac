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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundmem/geometry/box.h"
#include "groundmem/geometry/voxel.h"

namespace groundmem {

// A consolidated 3D object. `voxels` always equals Voxelize(points) at the
// association resolution and `aabb` tightly bounds `points`.
struct Instance {
  int id = 0;
  std::string label;
  PointList points;
  VoxelSet voxels;
  Aabb aabb;
  std::optional<YawBox> box;
  std::set<int> frames;

  static Instance Create(int id, std::string label, PointList points, int frame,
                         double voxel);
  // Appends points and observation frames, keeping voxels and aabb in sync.
  void Absorb(const PointList& more, const std::set<int>& more_frames);
};

struct ObservedCluster {
  std::string label;
  int frame_index = 0;
  PointList points;
};

struct AssociationDecision {
  enum class Kind { kCreated, kMerged };

  int frame_index = 0;
  std::string label;
  Kind kind = Kind::kCreated;
  int target_id = 0;
  double score = 0.0;  // best containment overlap among candidates, 0 if none

  nlohmann::json ToJson() const;
};

// Label-gated greedy association of per-frame clusters into instances.
// Single writer: decisions are applied in call order.
class InstanceStore {
 public:
  explicit InstanceStore(double voxel);

  // Candidates are instances with the same label whose AABB intersects the
  // cluster's. The cluster merges into the best-scoring candidate (lowest id
  // on ties) when its containment overlap is at least `tau`, otherwise it
  // founds a new instance. Empty clusters are rejected.
  AssociationDecision Associate(const ObservedCluster& cluster, double tau);

  const std::vector<Instance>& instances() const { return instances_; }
  double voxel() const { return voxel_; }
  std::vector<Instance> Release() { return std::move(instances_); }

 private:
  double voxel_;
  std::vector<Instance> instances_;
  int next_id_ = 0;
};

// Drops instances with fewer than `min_support` points, renumbers survivors
// 0..n-1 in original id order and fits a yaw box to each. Instances whose
// footprint is degenerate cannot carry a box and are dropped as well.
std::vector<Instance> RefineInstances(std::vector<Instance> instances, int min_support,
                                      const YawFitConfig& yaw);

// Merges same-label instances whose box footprints reach `iou_threshold`,
// over connected components, repeating until no such pair remains. Merged
// instances get refit boxes; ids are renumbered 0..n-1 by smallest member id.
std::vector<Instance> BevMerge(std::vector<Instance> instances, double iou_threshold,
                               const YawFitConfig& yaw);

}  // namespace groundmem
