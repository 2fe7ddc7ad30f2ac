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

#include <span>
#include <vector>

#include "groundmem/types.h"

namespace groundmem {

struct CleanConfig {
  double subsample_voxel = 0.02;
  int outlier_k = 16;
  double outlier_std_ratio = 2.0;
  double cluster_cell = 0.05;
  int min_points = 30;

  void Validate() const;
};

// One centroid per occupied voxel, in order of first appearance.
PointList VoxelSubsample(std::span<const Vec3> points, double voxel);

// Keeps points whose mean distance to their k nearest neighbors is at most
// mean + std_ratio * stddev of that statistic over the whole set (sample
// standard deviation). Sets with fewer than two points pass through.
PointList RemoveStatisticalOutliers(std::span<const Vec3> points, int k, double std_ratio);

// Connected components of occupied grid cells under 26-connectivity. Each
// cluster lists point indices in ascending order. Clusters are sorted by
// descending size; equal sizes order by their smallest voxel key.
std::vector<std::vector<size_t>> GridClusters(std::span<const Vec3> points, double cell);

// Subsample, outlier removal, then the largest grid cluster. Returns an empty
// list when that cluster has fewer than min_points points.
PointList CleanPoints(std::span<const Vec3> points, const CleanConfig& cfg);

}  // namespace groundmem
