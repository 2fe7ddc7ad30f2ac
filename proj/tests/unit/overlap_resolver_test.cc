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

#include "groundmem/mask/overlap_resolver.h"

#include <gtest/gtest.h>

#include "groundmem/error.h"
#include "oracles.h"

namespace groundmem {
namespace {

constexpr ImageSize kImage{100, 100};

MaskRecord Rect(const std::string& label, PixelRect r, int frame = 0) {
  MaskRecord m;
  m.frame_index = frame;
  m.label = label;
  m.confidence = 0.9;
  m.mask = BinaryMask(kImage.width, kImage.height);
  m.mask.FillRect(r);
  return m;
}

TEST(OverlapResolverTest, SmallConflictGoesToLargerMask) {
  // 2x2 = 4 px disputed, below 0.05% of 10000.
  const auto chair = Rect("chair", {10, 10, 30, 30});
  const auto table = Rect("table", {28, 28, 38, 38});
  const auto res = ResolveOverlaps({chair, table}, kImage, nullptr);
  ASSERT_EQ(res.events.size(), 1u);
  EXPECT_EQ(res.events[0].outcome, OverlapOutcome::kAssignedByArea);
  EXPECT_EQ(res.events[0].winner, 0u);
  EXPECT_EQ(res.events[0].pixels, 4);
  ASSERT_EQ(res.masks.size(), 2u);
  EXPECT_EQ(res.masks[0].mask.Area(), 400);
  EXPECT_EQ(res.masks[1].mask.Area(), 96);
  EXPECT_EQ(IntersectionArea(res.masks[0].mask, res.masks[1].mask), 0);
}

TEST(OverlapResolverTest, NullSegmenterLeavesLargeConflictUnresolved) {
  const auto chair = Rect("chair", {10, 10, 30, 30});
  const auto table = Rect("table", {20, 20, 40, 40});
  const auto res = ResolveOverlaps({chair, table}, kImage, nullptr);
  ASSERT_EQ(res.events.size(), 1u);
  EXPECT_EQ(res.events[0].outcome, OverlapOutcome::kUnresolved);
  EXPECT_FALSE(res.events[0].error.empty());
  EXPECT_EQ(res.events[0].ToJson().count("winner"), 0u);
  EXPECT_EQ(IntersectionArea(res.masks[0].mask, res.masks[1].mask), 100);
}

TEST(OverlapResolverTest, SameLabelAndOtherFramesIgnored) {
  const auto a = Rect("chair", {10, 10, 30, 30});
  const auto b = Rect("chair", {20, 20, 40, 40});
  const auto c = Rect("table", {20, 20, 40, 40}, 1);
  EXPECT_TRUE(ResolveOverlaps({a, b, c}, kImage, nullptr).events.empty());
}

class OverlapStubTest : public ::testing::Test {
 protected:
  void Answer(const std::string& label, double conf, bool touches = true) {
    SegmentRequest req{0, crop_, label};
    SegmentProposal p;
    p.mask = BinaryMask(crop_.Width(), crop_.Height());
    if (touches) p.mask.FillRect({0, 0, 2, 2});
    p.confidence = conf;
    FileStubSegmenter::WriteResponse(dir_.path(), req, {p});
  }

  oracle::TempDir dir_;
  const PixelRect crop_{20, 20, 30, 30};
  MaskRecord chair_ = Rect("chair", {10, 10, 30, 30});
  MaskRecord table_ = Rect("table", {20, 20, 40, 40});
};

TEST_F(OverlapStubTest, HigherConfidenceWins) {
  Answer("chair", 0.4);
  Answer("table", 0.7);
  FileStubSegmenter seg(dir_.path());
  const auto res = ResolveOverlaps({chair_, table_}, kImage, &seg);
  ASSERT_EQ(res.events.size(), 1u);
  const OverlapEvent& ev = res.events[0];
  EXPECT_EQ(ev.outcome, OverlapOutcome::kAssignedByReprompt);
  EXPECT_EQ(ev.crop, crop_);
  EXPECT_EQ(ev.winner, 1u);
  EXPECT_FALSE(ev.tie);
  EXPECT_DOUBLE_EQ(ev.first_confidence, 0.4);
  EXPECT_DOUBLE_EQ(ev.second_confidence, 0.7);
  EXPECT_EQ(res.masks[0].mask.Area(), 300);
  EXPECT_EQ(res.masks[1].mask.Area(), 400);
}

TEST_F(OverlapStubTest, ProposalsMissingTheDisputeGiveNoSupport) {
  Answer("chair", 0.9, /*touches=*/false);
  Answer("table", 0.2);
  FileStubSegmenter seg(dir_.path());
  const auto res = ResolveOverlaps({chair_, table_}, kImage, &seg);
  EXPECT_EQ(res.events[0].winner, 1u);
  EXPECT_DOUBLE_EQ(res.events[0].first_confidence, 0.0);
}

TEST_F(OverlapStubTest, TieGoesToLargerOriginalArea) {
  table_ = Rect("table", {20, 20, 45, 45});
  Answer("chair", 0.5);
  Answer("table", 0.5);
  FileStubSegmenter seg(dir_.path());
  const auto res = ResolveOverlaps({chair_, table_}, kImage, &seg);
  EXPECT_TRUE(res.events[0].tie);
  EXPECT_EQ(res.events[0].winner, 1u);
  EXPECT_TRUE(res.events[0].ToJson().at("tie").get<bool>());
}

TEST_F(OverlapStubTest, MissingResponseIsUnresolved) {
  Answer("chair", 0.5);
  FileStubSegmenter seg(dir_.path());
  const auto res = ResolveOverlaps({chair_, table_}, kImage, &seg);
  EXPECT_EQ(res.events[0].outcome, OverlapOutcome::kUnresolved);
  EXPECT_NE(res.events[0].error.find("no canned response"), std::string::npos);
}

TEST(OverlapResolverTest, ShrunkMaskBelowFloorIsDropped) {
  // Table keeps 9 px after losing 16 to the chair: 9 < 10.
  auto chair = Rect("chair", {10, 10, 60, 60});
  auto table = Rect("table", {56, 56, 61, 61});
  OverlapConfig cfg;
  cfg.min_region_fraction = 0.01;  // route the 16-px conflict by area
  const auto res = ResolveOverlaps({chair, table}, kImage, nullptr, cfg);
  ASSERT_EQ(res.dropped.size(), 1u);
  EXPECT_EQ(res.dropped[0], 1u);
  EXPECT_EQ(res.masks.size(), 1u);
}

TEST(OverlapResolverTest, DimensionMismatchThrows) {
  auto m = Rect("chair", {1, 1, 3, 3});
  m.mask = BinaryMask(5, 5);
  EXPECT_THROW(ResolveOverlaps({m}, kImage, nullptr), InvalidArgumentError);
}

}  // namespace
}  // namespace groundmem
