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

#include <map>
#include <random>

#include <gtest/gtest.h>

#include "groundmem/error.h"
#include "oracles.h"

namespace groundmem {
namespace {

PointList Blob(std::mt19937_64& rng, const Vec3& c, double r, int n) {
  std::uniform_real_distribution<double> u(-r, r);
  PointList out;
  for (int i = 0; i < n; ++i) out.push_back(c + Vec3(u(rng), u(rng), u(rng)));
  return out;
}

TEST(CleanTest, GridClustersMatchBreadthFirstOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    PointList pts;
    const int n = 50 + trial * 10;
    for (int i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng), 0.3 * u(rng));
    const double cell = 0.05 + 0.002 * trial;
    const auto clusters = GridClusters(pts, cell);
    const std::vector<int> truth = oracle::CellComponents(pts, cell);

    std::vector<int> ours(pts.size(), -1);
    size_t covered = 0;
    for (size_t c = 0; c < clusters.size(); ++c) {
      for (size_t i : clusters[c]) ours[i] = int(c);
      covered += clusters[c].size();
      if (c > 0) EXPECT_GE(clusters[c - 1].size(), clusters[c].size());
      EXPECT_TRUE(std::is_sorted(clusters[c].begin(), clusters[c].end()));
    }
    ASSERT_EQ(covered, pts.size());
    // Same partition: a bijection between labels.
    std::map<int, int> fwd, back;
    for (size_t i = 0; i < pts.size(); ++i) {
      auto [f, fi] = fwd.emplace(ours[i], truth[i]);
      auto [b, bi] = back.emplace(truth[i], ours[i]);
      EXPECT_EQ(f->second, truth[i]);
      EXPECT_EQ(b->second, ours[i]);
    }
  }
}

TEST(CleanTest, DiagonalCellsAreConnected) {
  const PointList pts = {Vec3(0.01, 0.01, 0.01), Vec3(0.06, 0.06, 0.06),
                         Vec3(0.16, 0.16, 0.16)};
  const auto clusters = GridClusters(pts, 0.05);
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_EQ(clusters[0], (std::vector<size_t>{0, 1}));
}

TEST(CleanTest, SubsampleKeepsOneCentroidPerVoxel) {
  std::mt19937_64 rng(3);
  const PointList pts = Blob(rng, Vec3(0.3, -0.2, 1.0), 0.2, 3000);
  const PointList sub = VoxelSubsample(pts, 0.05);
  const auto cells = oracle::CellsOf(pts, 0.05);
  EXPECT_EQ(sub.size(), cells.size());
  std::set<oracle::Cell> seen;
  for (const Vec3& p : sub) seen.insert(oracle::CellOf(p, 0.05));
  EXPECT_EQ(seen, cells);
}

TEST(CleanTest, OutlierRemovalDropsIsolatedPoints) {
  std::mt19937_64 rng(4);
  PointList pts = Blob(rng, Vec3::Zero(), 0.1, 400);
  pts.emplace_back(5, 5, 5);
  pts.emplace_back(-4, 3, 1);
  const PointList kept = RemoveStatisticalOutliers(pts, 16, 2.0);
  EXPECT_GE(kept.size(), 380u);
  for (const Vec3& p : kept) EXPECT_LT(p.norm(), 1.0);
  EXPECT_EQ(RemoveStatisticalOutliers(PointList{Vec3::Zero()}, 16, 2.0).size(), 1u);
}

TEST(CleanTest, CleanKeepsLargestClusterOrNothing) {
  std::mt19937_64 rng(8);
  PointList pts = Blob(rng, Vec3::Zero(), 0.15, 2000);
  const PointList small = Blob(rng, Vec3(2, 0, 0), 0.05, 300);
  pts.insert(pts.end(), small.begin(), small.end());
  const PointList out = CleanPoints(pts, CleanConfig{});
  ASSERT_FALSE(out.empty());
  for (const Vec3& p : out) EXPECT_LT(p.norm(), 0.5);

  CleanConfig strict;
  strict.min_points = 100000;
  EXPECT_TRUE(CleanPoints(pts, strict).empty());
}

TEST(CleanTest, ConfigValidation) {
  CleanConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.outlier_k = 0;
  EXPECT_THROW(cfg.Validate(), InvalidArgumentError);
}

}  // namespace
}  // namespace groundmem
