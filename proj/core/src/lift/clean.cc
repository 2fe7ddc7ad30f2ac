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

#include "groundmem/lift/clean.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "groundmem/error.h"
#include "groundmem/geometry/kdtree.h"
#include "groundmem/geometry/voxel.h"
#include "groundmem/util/union_find.h"

namespace groundmem {

void CleanConfig::Validate() const {
  if (!(subsample_voxel > 0.0)) throw InvalidArgumentError("clean.subsample_voxel must be positive");
  if (outlier_k <= 0) throw InvalidArgumentError("clean.outlier_k must be positive");
  if (!(outlier_std_ratio > 0.0)) throw InvalidArgumentError("clean.outlier_std_ratio must be positive");
  if (!(cluster_cell > 0.0)) throw InvalidArgumentError("clean.cluster_cell must be positive");
  if (min_points <= 0) throw InvalidArgumentError("clean.min_points must be positive");
}

PointList VoxelSubsample(std::span<const Vec3> points, double voxel) {
  if (!(voxel > 0.0)) throw InvalidArgumentError("subsample voxel must be positive");
  std::unordered_map<VoxelKey, size_t, VoxelKeyHash> slot;
  std::vector<Vec3> sums;
  std::vector<int> counts;
  for (const Vec3& p : points) {
    auto [it, inserted] = slot.try_emplace(VoxelOf(p, voxel), sums.size());
    if (inserted) {
      sums.push_back(p);
      counts.push_back(1);
    } else {
      sums[it->second] += p;
      ++counts[it->second];
    }
  }
  PointList out(sums.size());
  for (size_t i = 0; i < sums.size(); ++i) out[i] = sums[i] / double(counts[i]);
  return out;
}

PointList RemoveStatisticalOutliers(std::span<const Vec3> points, int k, double std_ratio) {
  const size_t n = points.size();
  if (n < 2) return PointList(points.begin(), points.end());
  const size_t kk = std::min<size_t>(size_t(k), n - 1);
  KdTree tree(points);
  std::vector<double> mean_dist(n);
  for (size_t i = 0; i < n; ++i) {
    // The query point is its own nearest neighbor at distance zero.
    const auto nn = tree.Nearest(points[i], kk + 1);
    double sum = 0.0;
    for (const auto& [idx, d2] : nn) sum += std::sqrt(d2);
    mean_dist[i] = sum / double(kk);
  }
  double mean = 0.0;
  for (double d : mean_dist) mean += d;
  mean /= double(n);
  double var = 0.0;
  for (double d : mean_dist) var += (d - mean) * (d - mean);
  var /= double(n - 1);
  const double threshold = mean + std_ratio * std::sqrt(var);

  PointList out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i)
    if (mean_dist[i] <= threshold) out.push_back(points[i]);
  return out;
}

std::vector<std::vector<size_t>> GridClusters(std::span<const Vec3> points, double cell) {
  if (!(cell > 0.0)) throw InvalidArgumentError("cluster cell must be positive");
  std::unordered_map<VoxelKey, size_t, VoxelKeyHash> cell_id;
  std::vector<VoxelKey> keys;
  std::vector<size_t> point_cell(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    const VoxelKey k = VoxelOf(points[i], cell);
    auto [it, inserted] = cell_id.try_emplace(k, keys.size());
    if (inserted) keys.push_back(k);
    point_cell[i] = it->second;
  }
  UnionFind uf(keys.size());
  for (size_t c = 0; c < keys.size(); ++c) {
    const VoxelKey& k = keys[c];
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          if (!dx && !dy && !dz) continue;
          auto it = cell_id.find({k.x + dx, k.y + dy, k.z + dz});
          if (it != cell_id.end()) uf.Union(c, it->second);
        }
  }
  std::unordered_map<size_t, size_t> root_to_cluster;
  std::vector<std::vector<size_t>> clusters;
  std::vector<VoxelKey> smallest;
  for (size_t i = 0; i < points.size(); ++i) {
    const size_t c = point_cell[i];
    const size_t root = uf.Find(c);
    auto [it, inserted] = root_to_cluster.try_emplace(root, clusters.size());
    if (inserted) {
      clusters.emplace_back();
      smallest.push_back(keys[c]);
    }
    clusters[it->second].push_back(i);
    smallest[it->second] = std::min(smallest[it->second], keys[c]);
  }
  std::vector<size_t> order(clusters.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (clusters[a].size() != clusters[b].size()) return clusters[a].size() > clusters[b].size();
    return smallest[a] < smallest[b];
  });
  std::vector<std::vector<size_t>> sorted;
  sorted.reserve(order.size());
  for (size_t i : order) sorted.push_back(std::move(clusters[i]));
  return sorted;
}

PointList CleanPoints(std::span<const Vec3> points, const CleanConfig& cfg) {
  if (points.empty()) return {};
  const PointList sub = VoxelSubsample(points, cfg.subsample_voxel);
  const PointList inliers = RemoveStatisticalOutliers(sub, cfg.outlier_k, cfg.outlier_std_ratio);
  const auto clusters = GridClusters(inliers, cfg.cluster_cell);
  if (clusters.empty() || clusters.front().size() < size_t(cfg.min_points)) return {};
  PointList out;
  out.reserve(clusters.front().size());
  for (size_t i : clusters.front()) out.push_back(inliers[i]);
  return out;
}

}  // namespace groundmem
