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

#include "groundmem/geometry/voxel.h"

#include <algorithm>
#include <cmath>

#include "groundmem/error.h"

namespace groundmem {

VoxelKey VoxelOf(const Vec3& p, double resolution) {
  return {static_cast<int32_t>(std::floor(p.x() / resolution)),
          static_cast<int32_t>(std::floor(p.y() / resolution)),
          static_cast<int32_t>(std::floor(p.z() / resolution))};
}

VoxelSet::VoxelSet(double resolution) : resolution_(resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw InvalidArgumentError("voxel resolution must be positive, got " +
                               std::to_string(resolution));
  }
}

void VoxelSet::Merge(const VoxelSet& other) {
  if (other.resolution_ != resolution_) {
    throw InvalidArgumentError("cannot merge voxel sets of different resolution");
  }
  cells_.insert(other.cells_.begin(), other.cells_.end());
}

std::vector<VoxelKey> VoxelSet::SortedCells() const {
  std::vector<VoxelKey> out(cells_.begin(), cells_.end());
  std::sort(out.begin(), out.end());
  return out;
}

VoxelSet Voxelize(std::span<const Vec3> points, double resolution) {
  VoxelSet set(resolution);
  for (const Vec3& p : points) {
    if (!p.allFinite()) throw InvalidArgumentError("cannot voxelize a non-finite point");
    set.InsertPoint(p);
  }
  return set;
}

size_t IntersectionSize(const VoxelSet& a, const VoxelSet& b) {
  const VoxelSet& small = a.size() <= b.size() ? a : b;
  const VoxelSet& large = a.size() <= b.size() ? b : a;
  size_t n = 0;
  for (const VoxelKey& k : small.cells()) n += large.Contains(k);
  return n;
}

double ContainmentOverlap(const VoxelSet& a, const VoxelSet& b) {
  if (a.resolution() != b.resolution()) {
    throw InvalidArgumentError("containment overlap: resolution mismatch");
  }
  if (a.empty() || b.empty()) {
    throw InvalidArgumentError("containment overlap: empty voxel set");
  }
  const double inter = static_cast<double>(IntersectionSize(a, b));
  return std::max(inter / double(a.size()), inter / double(b.size()));
}

}  // namespace groundmem
