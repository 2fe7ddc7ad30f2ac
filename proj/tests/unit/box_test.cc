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

#include "groundmem/geometry/box.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "groundmem/error.h"
#include "oracles.h"

namespace groundmem {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::vector<Vec3> Rectangle(std::mt19937_64& rng, double l, double w, double yaw, Vec2 c,
                            int n) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const double cs = std::cos(yaw), sn = std::sin(yaw);
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) {
    const double a = u(rng) * l, b = u(rng) * w;
    pts.emplace_back(c.x() + cs * a - sn * b, c.y() + sn * a + cs * b, u(rng));
  }
  return pts;
}

TEST(BoxTest, AxisAlignedRectangleIsRecovered) {
  std::vector<Vec3> pts;
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 4; ++j) pts.emplace_back(1.0 + 0.2 * i, -1.0 + 0.1 * j, 0.5 * (i % 2));
  const YawBox box = FitYawBox(pts, {kDeg, 0.0});
  EXPECT_NEAR(box.yaw, 0.0, 1e-12);
  EXPECT_NEAR(box.size.x(), 2.0, 1e-9);
  EXPECT_NEAR(box.size.y(), 0.4, 1e-9);
  EXPECT_NEAR(box.size.z(), 0.5, 1e-9);
  EXPECT_NEAR(box.center.x(), 2.0, 1e-9);
  EXPECT_NEAR(box.center.y(), -0.8, 1e-9);
}

TEST(BoxTest, YawMatchesFineGridOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> yaw(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> len(0.3, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = Rectangle(rng, len(rng), len(rng), yaw(rng), Vec2(2.0, -1.0), 300);
    const YawBox box = FitYawBox(pts, {kDeg, 0.0});
    const auto fine = oracle::MinAreaYaw(pts, 0.01 * kDeg);
    EXPECT_LE(oracle::YawGap(box.yaw, fine.yaw), kDeg + 1e-9) << trial;
    // Area is compared on the fit's own grid; a 1 degree grid cannot reach
    // the fine-grid area for arbitrary yaws.
    const auto coarse = oracle::MinAreaYaw(pts, kDeg);
    EXPECT_NEAR(box.BevArea(), coarse.area, 1e-3 * coarse.area) << trial;
    EXPECT_GE(box.BevArea(), fine.area * (1 - 1e-9)) << trial;
  }
}

TEST(BoxTest, FitIsTranslationEquivariant) {
  std::mt19937_64 rng(4);
  auto pts = Rectangle(rng, 1.2, 0.5, 0.7, Vec2(0, 0), 200);
  const YawBox a = FitYawBox(pts);
  for (Vec3& p : pts) p += Vec3(100.0, -40.0, 3.0);
  const YawBox b = FitYawBox(pts);
  EXPECT_NEAR(a.yaw, b.yaw, 1e-12);
  EXPECT_TRUE(a.size.isApprox(b.size, 1e-9));
  EXPECT_TRUE((b.center - a.center).isApprox(Vec3(100.0, -40.0, 3.0), 1e-9));
}

TEST(BoxTest, TrimIgnoresSparseOutliers) {
  std::mt19937_64 rng(8);
  auto pts = Rectangle(rng, 1.0, 0.5, 0.0, Vec2(0, 0), 1000);
  pts.emplace_back(10.0, 0.0, 0.0);
  const YawBox box = FitYawBox(pts, {kDeg, 0.02});
  EXPECT_LT(box.size.x(), 1.1);
}

TEST(BoxTest, YawStaysInFirstQuadrant) {
  std::mt19937_64 rng(13);
  for (double y : {0.0, 1.2, 2.5, 3.0, -0.4}) {
    const YawBox box = FitYawBox(Rectangle(rng, 2.0, 1.0, y, Vec2(0, 0), 200));
    EXPECT_GE(box.yaw, 0.0);
    EXPECT_LT(box.yaw, std::numbers::pi / 2);
  }
}

TEST(BoxTest, DegenerateFootprintsThrow) {
  const std::vector<Vec3> two = {Vec3(0, 0, 0), Vec3(1, 0, 0)};
  EXPECT_THROW(FitYawBox(two), DegenerateGeometryError);
  std::vector<Vec3> line;
  for (int i = 0; i < 10; ++i) line.emplace_back(i, 2 * i, i % 3);
  EXPECT_THROW(FitYawBox(line), DegenerateGeometryError);
  const std::vector<Vec3> stack = {Vec3(1, 1, 0), Vec3(1, 1, 1), Vec3(1, 1, 2)};
  EXPECT_THROW(FitYawBox(stack), DegenerateGeometryError);
}

TEST(BoxTest, InvalidConfigThrows) {
  const std::vector<Vec3> pts = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  EXPECT_THROW(FitYawBox(pts, {0.0, 0.0}), InvalidArgumentError);
  EXPECT_THROW(FitYawBox(pts, {kDeg, 0.5}), InvalidArgumentError);
}

TEST(BoxTest, BevIouAnalyticCases) {
  YawBox a;
  a.center = Vec3(0, 0, 0);
  a.size = Vec3(1, 1, 1);
  YawBox b = a;
  EXPECT_NEAR(BevIou(a, b), 1.0, 1e-12);
  b.center = Vec3(0.5, 0, 0);
  EXPECT_NEAR(BevIou(a, b), 0.5 / 1.5, 1e-12);
  b.center = Vec3(3, 0, 0);
  EXPECT_EQ(BevIou(a, b), 0.0);
  // Unit square against itself rotated by 45 degrees: the overlap is a
  // regular octagon of area 2 (sqrt 2 - 1).
  b.center = Vec3(0, 0, 0);
  b.yaw = std::numbers::pi / 4;
  const double octagon = 2.0 * (std::sqrt(2.0) - 1.0);
  EXPECT_NEAR(BevIou(a, b), octagon / (2.0 - octagon), 1e-12);
  // Rotation by 90 degrees with swapped sides is the same footprint.
  YawBox c = a, d = a;
  c.size = Vec3(2, 1, 1);
  d.size = Vec3(1, 2, 1);
  d.yaw = std::numbers::pi / 2;
  EXPECT_NEAR(BevIou(c, d), 1.0, 1e-12);
}

TEST(BoxTest, AabbIou) {
  const Aabb a{Vec3(0, 0, 0), Vec3(2, 2, 1)}, b{Vec3(1, 1, 0), Vec3(3, 3, 1)};
  EXPECT_NEAR(BevIou(a, b), 1.0 / 7.0, 1e-12);
}

TEST(BoxTest, CanonicalizeKeepsFootprint) {
  YawBox box;
  box.size = Vec3(3, 1, 1);
  for (double y : {-2.0, -0.1, 0.0, 1.0, 1.6, 3.3, 7.0}) {
    box.yaw = y;
    const YawBox c = CanonicalizeYaw(box);
    EXPECT_GE(c.yaw, 0.0);
    EXPECT_LT(c.yaw, std::numbers::pi / 2);
    EXPECT_NEAR(BevIou(box, c), 1.0, 1e-9) << y;
  }
}

TEST(BoxTest, ClipConvexOfNestedSquares) {
  const Polygon2 outer = {Vec2(0, 0), Vec2(4, 0), Vec2(4, 4), Vec2(0, 4)};
  const Polygon2 inner = {Vec2(1, 1), Vec2(2, 1), Vec2(2, 2), Vec2(1, 2)};
  EXPECT_NEAR(PolygonArea(ClipConvex(inner, outer)), 1.0, 1e-12);
  EXPECT_NEAR(PolygonArea(ClipConvex(outer, inner)), 1.0, 1e-12);
}

TEST(BoxTest, AabbBasics) {
  const std::vector<Vec3> pts = {Vec3(1, 2, 3), Vec3(-1, 0, 5)};
  const Aabb box = Aabb::FromPoints(pts);
  EXPECT_EQ(box.min, Vec3(-1, 0, 3));
  EXPECT_EQ(box.max, Vec3(1, 2, 5));
  EXPECT_TRUE(box.Contains(Vec3(0, 1, 4)));
  EXPECT_FALSE(box.Contains(Vec3(0, 1, 6)));
  EXPECT_TRUE(box.Intersects(Aabb{Vec3(1, 2, 5), Vec3(9, 9, 9)}));
  EXPECT_THROW(Aabb::FromPoints(std::vector<Vec3>{}), InvalidArgumentError);
}

}  // namespace
}  // namespace groundmem
