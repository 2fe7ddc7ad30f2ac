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

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include "groundmem/types.h"

namespace groundmem {

// Integer grid cell. Grids are anchored at the scene origin, so keys from
// different point sets at the same resolution are directly comparable.
struct VoxelKey {
  int32_t x = 0;
  int32_t y = 0;
  int32_t z = 0;

  auto operator<=>(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
  size_t operator()(const VoxelKey& k) const noexcept {
    uint64_t h = uint64_t(uint32_t(k.x)) * 0x9E3779B185EBCA87ull;
    h ^= uint64_t(uint32_t(k.y)) * 0xC2B2AE3D27D4EB4Full + (h << 6) + (h >> 2);
    h ^= uint64_t(uint32_t(k.z)) * 0x165667B19E3779F9ull + (h << 6) + (h >> 2);
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

// floor(p / resolution), componentwise.
VoxelKey VoxelOf(const Vec3& p, double resolution);

class VoxelSet {
 public:
  using Cells = std::unordered_set<VoxelKey, VoxelKeyHash>;

  VoxelSet() = default;
  explicit VoxelSet(double resolution);

  double resolution() const { return resolution_; }
  size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool Contains(const VoxelKey& k) const { return cells_.count(k) != 0; }

  void Insert(const VoxelKey& k) { cells_.insert(k); }
  void InsertPoint(const Vec3& p) { cells_.insert(VoxelOf(p, resolution_)); }
  void Merge(const VoxelSet& other);

  const Cells& cells() const { return cells_; }

  // Cells in lexicographic order; handy for comparisons and serialization.
  std::vector<VoxelKey> SortedCells() const;

  bool operator==(const VoxelSet& other) const {
    return resolution_ == other.resolution_ && cells_ == other.cells_;
  }

 private:
  double resolution_ = 0.0;
  Cells cells_;
};

VoxelSet Voxelize(std::span<const Vec3> points, double resolution);

// |A n B|
size_t IntersectionSize(const VoxelSet& a, const VoxelSet& b);

// Containment-based overlap max(|A n B| / |A|, |A n B| / |B|).
// Throws InvalidArgumentError on resolution mismatch or an empty operand.
double ContainmentOverlap(const VoxelSet& a, const VoxelSet& b);

}  // namespace groundmem
