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

#include "groundmem/lift/instance.h"

#include <algorithm>
#include <map>

#include "groundmem/error.h"
#include "groundmem/util/union_find.h"

namespace groundmem {

Instance Instance::Create(int id, std::string label, PointList points, int frame,
                          double voxel) {
  Instance inst;
  inst.id = id;
  inst.label = std::move(label);
  inst.voxels = Voxelize(points, voxel);
  inst.aabb = Aabb::FromPoints(points);
  inst.points = std::move(points);
  inst.frames.insert(frame);
  return inst;
}

void Instance::Absorb(const PointList& more, const std::set<int>& more_frames) {
  // Voxelization distributes over union, so inserting the new cells keeps
  // voxels == Voxelize(points) exactly.
  for (const Vec3& p : more) {
    voxels.InsertPoint(p);
    aabb.Extend(p);
  }
  points.insert(points.end(), more.begin(), more.end());
  frames.insert(more_frames.begin(), more_frames.end());
}

nlohmann::json AssociationDecision::ToJson() const {
  return {{"frame", frame_index},
          {"label", label},
          {"decision", kind == Kind::kMerged ? "merged" : "created"},
          {"target_id", target_id},
          {"score", score}};
}

InstanceStore::InstanceStore(double voxel) : voxel_(voxel) {
  if (!(voxel > 0.0)) throw InvalidArgumentError("association voxel must be positive");
}

AssociationDecision InstanceStore::Associate(const ObservedCluster& cluster, double tau) {
  if (cluster.points.empty()) throw InvalidArgumentError("cannot associate an empty cluster");
  const VoxelSet cells = Voxelize(cluster.points, voxel_);
  const Aabb bounds = Aabb::FromPoints(cluster.points);

  AssociationDecision decision;
  decision.frame_index = cluster.frame_index;
  decision.label = cluster.label;

  Instance* best = nullptr;
  double best_score = -1.0;
  for (Instance& inst : instances_) {
    if (inst.label != cluster.label || !inst.aabb.Intersects(bounds)) continue;
    const double score = ContainmentOverlap(cells, inst.voxels);
    if (score > best_score) {
      best_score = score;
      best = &inst;
    }
  }
  decision.score = best ? best_score : 0.0;
  if (best != nullptr && best_score >= tau) {
    best->Absorb(cluster.points, {cluster.frame_index});
    decision.kind = AssociationDecision::Kind::kMerged;
    decision.target_id = best->id;
    return decision;
  }
  const int id = next_id_++;
  instances_.push_back(
      Instance::Create(id, cluster.label, cluster.points, cluster.frame_index, voxel_));
  decision.kind = AssociationDecision::Kind::kCreated;
  decision.target_id = id;
  return decision;
}

std::vector<Instance> RefineInstances(std::vector<Instance> instances, int min_support,
                                      const YawFitConfig& yaw) {
  std::sort(instances.begin(), instances.end(),
            [](const Instance& a, const Instance& b) { return a.id < b.id; });
  std::vector<Instance> out;
  for (Instance& inst : instances) {
    if (int64_t(inst.points.size()) < min_support) continue;
    try {
      inst.box = FitYawBox(inst.points, yaw);
    } catch (const DegenerateGeometryError&) {
      continue;
    }
    inst.id = static_cast<int>(out.size());
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<Instance> BevMerge(std::vector<Instance> instances, double iou_threshold,
                               const YawFitConfig& yaw) {
  std::sort(instances.begin(), instances.end(),
            [](const Instance& a, const Instance& b) { return a.id < b.id; });
  for (Instance& inst : instances) {
    if (!inst.box) inst.box = FitYawBox(inst.points, yaw);
  }
  while (true) {
    const size_t n = instances.size();
    UnionFind uf(n);
    bool any = false;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (instances[i].label != instances[j].label) continue;
        if (BevIou(*instances[i].box, *instances[j].box) >= iou_threshold) {
          uf.Union(i, j);
          any = true;
        }
      }
    }
    if (!any) break;

    std::map<size_t, std::vector<size_t>> components;
    for (size_t i = 0; i < n; ++i) components[uf.Find(i)].push_back(i);
    std::vector<Instance> merged;
    for (auto& [root, members] : components) {
      // Members are ascending, so the first one holds the smallest id.
      Instance base = std::move(instances[members.front()]);
      for (size_t k = 1; k < members.size(); ++k) {
        const Instance& other = instances[members[k]];
        base.Absorb(other.points, other.frames);
      }
      if (members.size() > 1) base.box = FitYawBox(base.points, yaw);
      merged.push_back(std::move(base));
    }
    std::sort(merged.begin(), merged.end(),
              [](const Instance& a, const Instance& b) { return a.id < b.id; });
    instances = std::move(merged);
  }
  for (size_t i = 0; i < instances.size(); ++i) instances[i].id = static_cast<int>(i);
  return instances;
}

}  // namespace groundmem
