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

#include "groundmem/lift/lift.h"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "groundmem/error.h"
#include "oracles.h"

namespace groundmem {
namespace {

TEST(LiftTest, BackprojectionReprojectsToSourcePixel) {
  constexpr int kW = 100, kH = 100;
  const Intrinsics K{412.5, 398.25, 49.3, 51.7};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<float> depth(0.2f, 12.0f);
  DepthMap d(kH, kW);
  for (float& v : d.depth) v = depth(rng);
  BinaryMask all(kW, kH);
  all.FillRect({0, 0, kW, kH});

  const PointList pts = Backproject(d, K, all);
  ASSERT_EQ(pts.size(), size_t(kW * kH));
  double worst = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const int u = int(i % kW), v = int(i / kW);
    const Eigen::Vector2d uv = oracle::Project(K.fx, K.fy, K.cx, K.cy, pts[i]);
    worst = std::max(worst, (uv - Eigen::Vector2d(u, v)).norm());
    EXPECT_FLOAT_EQ(float(pts[i].z()), d.At(v, u));
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(LiftTest, InvalidDepthEmitsNothing) {
  DepthMap d(2, 3);
  d.depth = {0.0f, -1.0f, std::numeric_limits<float>::quiet_NaN(),
             std::numeric_limits<float>::infinity(), 2.0f, 3.0f};
  BinaryMask m(3, 2);
  m.FillRect({0, 0, 3, 2});
  m.Set(2, 1, false);
  const PointList pts = Backproject(d, Intrinsics{1, 1, 0, 0}, m);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], Vec3(2.0, 2.0, 2.0));
}

TEST(LiftTest, BackprojectRejectsBadInputs) {
  DepthMap d(2, 2);
  EXPECT_THROW(Backproject(d, Intrinsics{1, 1, 0, 0}, BinaryMask(3, 2)), InvalidArgumentError);
  EXPECT_THROW(Backproject(d, Intrinsics{0, 1, 0, 0}, BinaryMask(2, 2)), InvalidArgumentError);
}

TEST(LiftTest, PointMapSkipsInvalidAndMaskedPixels) {
  PointMap pm(2, 2);
  pm.Set(0, 0, Vec3(1, 2, 3));
  pm.Set(0, 1, Vec3(4, 5, 6));
  pm.SetInvalid(1, 0);
  pm.Set(1, 1, Vec3(7, 8, 9));
  BinaryMask m(2, 2);
  m.Set(0, 0);
  m.Set(0, 1);  // row 1, col 0: invalid
  m.Set(1, 1);
  const PointList pts = LiftFromPointMap(pm, m);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0], Vec3(1, 2, 3));
  EXPECT_EQ(pts[1], Vec3(7, 8, 9));
}

TEST(LiftTest, PointMapSamplesNearestMaskPixelAcrossResolutions) {
  // 2x2 point map under a 4x4 mask: each point-map pixel reads mask pixel
  // (2c + 1, 2r + 1).
  PointMap pm(2, 2);
  for (uint32_t r = 0; r < 2; ++r)
    for (uint32_t c = 0; c < 2; ++c) pm.Set(r, c, Vec3(r, c, 0));
  BinaryMask m(4, 4);
  m.Set(3, 1);  // row 0, col 1
  m.Set(0, 2);  // ignored: not a sample point
  const PointList pts = LiftFromPointMap(pm, m);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], Vec3(0, 1, 0));
}

TEST(LiftTest, DepthSourceAppliesPose) {
  FrameRecord f;
  auto d = std::make_shared<DepthMap>(1, 1);
  d->depth[0] = 2.0f;
  f.depth = d;
  f.intrinsics = {1, 1, 0, 0};
  Mat4 T = Mat4::Identity();
  T(0, 3) = 10.0;
  f.pose = T;
  BinaryMask m(1, 1);
  m.Set(0, 0);
  const PointList pts = LiftMask(f, m, LiftSource::kDepth);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], Vec3(10, 0, 2));
  f.depth.reset();
  EXPECT_THROW(LiftMask(f, m, LiftSource::kDepth), InvalidArgumentError);
}

}  // namespace
}  // namespace groundmem
