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

#include "groundmem/memory/visual_memory.h"

#include <algorithm>
#include <mutex>

#include "groundmem/error.h"
#include "groundmem/geometry/voxel.h"

namespace groundmem {
using nlohmann::json;

namespace {

void RankAndTrim(std::vector<RankedFrame>* frames, int k) {
  std::sort(frames->begin(), frames->end(), [](const RankedFrame& a, const RankedFrame& b) {
    if (a.voxels != b.voxels) return a.voxels > b.voxels;
    return a.frame_index < b.frame_index;
  });
  if (frames->size() > size_t(k)) frames->resize(size_t(k));
}

}  // namespace

std::vector<MemoryEntry> BuildMemoryEntries(const SceneBundle& bundle) {
  std::vector<MemoryEntry> out;
  out.reserve(bundle.frames.size());
  for (const FrameRecord& f : bundle.frames) out.push_back({f.frame_index, f.pointmap, f.rgb_path});
  return out;
}

json ViewCache::ToJson() const {
  json list = json::array();
  for (const RankedFrame& f : frames) {
    list.push_back({{"index", f.frame_index}, {"coverage", f.coverage}, {"rgb", f.rgb_path}});
  }
  return {{"key", key}, {"K", k}, {"delta", delta}, {"frames", list}};
}

ViewCache ViewCache::FromJson(const json& j) {
  ViewCache c;
  c.key = j.at("key").get<std::string>();
  c.k = j.at("K").get<int>();
  c.delta = j.at("delta").get<double>();
  for (const json& f : j.at("frames")) {
    RankedFrame r;
    r.frame_index = f.at("index").get<int>();
    r.coverage = f.at("coverage").get<double>();
    r.rgb_path = f.value("rgb", "");
    r.voxels = c.delta > 0 ? int64_t(std::llround(r.coverage / (c.delta * c.delta * c.delta))) : 0;
    c.frames.push_back(std::move(r));
  }
  return c;
}

int64_t CoveredVoxels(const MemoryEntry& entry, const Region& region, double delta) {
  if (!(delta > 0.0)) throw InvalidArgumentError("retrieval voxel must be positive");
  if (!entry.pointmap) return 0;
  const PointMap& pm = *entry.pointmap;
  VoxelSet::Cells cells;
  for (uint32_t r = 0; r < pm.height; ++r) {
    for (uint32_t c = 0; c < pm.width; ++c) {
      if (!pm.IsValid(r, c)) continue;
      const Vec3 p = pm.At(r, c);
      if (region.Contains(p)) cells.insert(VoxelOf(p, delta));
    }
  }
  return static_cast<int64_t>(cells.size());
}

double CoverageScore(const MemoryEntry& entry, const Region& region, double delta) {
  return double(CoveredVoxels(entry, region, delta)) * delta * delta * delta;
}

ViewCache Retrieve(std::span<const MemoryEntry> memory, const Region& region, int k,
                   double delta) {
  if (k < 1) throw InvalidArgumentError("retrieval K must be at least 1");
  ViewCache cache;
  cache.key = region.Describe();
  cache.k = k;
  cache.delta = delta;
  for (const MemoryEntry& e : memory) {
    const int64_t voxels = CoveredVoxels(e, region, delta);
    if (voxels == 0) continue;
    cache.frames.push_back(
        {e.frame_index, double(voxels) * delta * delta * delta, voxels, e.rgb_path});
  }
  RankAndTrim(&cache.frames, k);
  return cache;
}

Region RegionFromBox(const Aabb& box) {
  if (!box.IsValid()) throw InvalidArgumentError("region box has min > max");
  return Region(box);
}

Region RegionFromDirection(const Vec3& anchor, const Vec3& direction) {
  return Region(FrontRegion(anchor, direction));
}

ViewCache VisualMemory::Retrieve(const Region& region, int k, double delta) const {
  ++scoring_calls_;
  return groundmem::Retrieve(entries_, region, k, delta);
}

std::shared_ptr<const ViewCache> VisualMemory::CacheRegionViews(const std::string& key,
                                                                const Region& region, int k,
                                                                double delta) {
  if (auto hit = Lookup(key)) return hit;
  auto computed = std::make_shared<ViewCache>(Retrieve(region, k, delta));
  computed->key = key;
  std::unique_lock lock(mu_);
  // A concurrent writer may have won; values are deterministic, keep theirs.
  auto [it, inserted] = cache_.try_emplace(key, std::move(computed));
  return it->second;
}

std::shared_ptr<const ViewCache> VisualMemory::CacheInstanceViews(int instance_id,
                                                                  const Aabb& box, int k,
                                                                  double delta) {
  return CacheRegionViews("instance:" + std::to_string(instance_id), RegionFromBox(box), k,
                          delta);
}

std::shared_ptr<const ViewCache> VisualMemory::Lookup(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = cache_.find(key);
  return it == cache_.end() ? nullptr : it->second;
}

ViewCache RetrieveByMaskArea(const SceneBundle& bundle, const std::string& label, int k) {
  if (k < 1) throw InvalidArgumentError("retrieval K must be at least 1");
  std::vector<int64_t> area(bundle.frames.size(), 0);
  for (const MaskRecord& m : bundle.masks)
    if (m.label == label) area[size_t(m.frame_index)] += m.mask.Area();
  ViewCache cache;
  cache.key = "mask_area:" + label;
  cache.k = k;
  for (size_t f = 0; f < area.size(); ++f) {
    if (area[f] == 0) continue;
    cache.frames.push_back({int(f), double(area[f]), area[f], bundle.frames[f].rgb_path});
  }
  RankAndTrim(&cache.frames, k);
  return cache;
}

}  // namespace groundmem
