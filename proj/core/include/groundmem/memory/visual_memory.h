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

#include <atomic>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundmem/geometry/region.h"
#include "groundmem/io/bundle.h"
#include "groundmem/lift/instance.h"

namespace groundmem {

struct MemoryEntry {
  int frame_index = 0;
  std::shared_ptr<const PointMap> pointmap;
  std::string rgb_path;
};

std::vector<MemoryEntry> BuildMemoryEntries(const SceneBundle& bundle);

struct RankedFrame {
  int frame_index = 0;
  double coverage = 0.0;  // cubic meters
  int64_t voxels = 0;     // distinct occupied voxels, the exact ranking key
  std::string rgb_path;
};

struct ViewCache {
  std::string key;
  int k = 0;
  double delta = 0.0;
  std::vector<RankedFrame> frames;  // coverage non-increasing, size <= k

  bool empty() const { return frames.empty(); }
  // {"key", "K", "delta", "frames": [{"index", "coverage", "rgb"}]}
  nlohmann::json ToJson() const;
  static ViewCache FromJson(const nlohmann::json& j);
};

// Distinct voxels touched by the entry's in-region points.
int64_t CoveredVoxels(const MemoryEntry& entry, const Region& region, double delta);

// delta^3 * CoveredVoxels(...). Zero for an empty or all-invalid point map.
double CoverageScore(const MemoryEntry& entry, const Region& region, double delta);

// Frames ranked by coverage (descending), ties by ascending frame index.
// Zero-coverage frames are excluded; at most k frames are returned.
ViewCache Retrieve(std::span<const MemoryEntry> memory, const Region& region, int k,
                   double delta);

Region RegionFromBox(const Aabb& box);
// Front cuboid with depth 3 m, half-width 1.5 m and minimum height 0.1 m.
Region RegionFromDirection(const Vec3& anchor, const Vec3& direction);

// Frame memory with an instance-keyed view cache. Safe for concurrent
// retrievals; cache insertions are atomic per key.
class VisualMemory {
 public:
  explicit VisualMemory(std::vector<MemoryEntry> entries) : entries_(std::move(entries)) {}
  explicit VisualMemory(const SceneBundle& bundle) : entries_(BuildMemoryEntries(bundle)) {}

  const std::vector<MemoryEntry>& entries() const { return entries_; }

  // Scores every frame; counts toward scoring_calls().
  ViewCache Retrieve(const Region& region, int k, double delta) const;

  // Cached under "instance:<id>". Later calls with the same id return the
  // stored object without rescoring, whatever k and delta they pass.
  std::shared_ptr<const ViewCache> CacheInstanceViews(int instance_id, const Aabb& box, int k,
                                                      double delta);
  std::shared_ptr<const ViewCache> CacheRegionViews(const std::string& key,
                                                    const Region& region, int k, double delta);
  std::shared_ptr<const ViewCache> Lookup(const std::string& key) const;

  // Number of full memory scans performed so far.
  int64_t scoring_calls() const { return scoring_calls_.load(); }

 private:
  std::vector<MemoryEntry> entries_;
  mutable std::atomic<int64_t> scoring_calls_{0};
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<const ViewCache>> cache_;
};

// Frames ranked by the pixel area of masks carrying `label` (2D baseline).
ViewCache RetrieveByMaskArea(const SceneBundle& bundle, const std::string& label, int k);

}  // namespace groundmem
