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

#include <algorithm>

#include "groundmem/error.h"

namespace groundmem {

nlohmann::json OverlapEvent::ToJson() const {
  const char* names[] = {"area", "reprompt", "unresolved"};
  nlohmann::json j = {{"frame", frame_index},
                      {"first", first},
                      {"second", second},
                      {"pixels", pixels},
                      {"crop", {crop.x0, crop.y0, crop.x1, crop.y1}},
                      {"outcome", names[static_cast<int>(outcome)]},
                      {"tie", tie}};
  if (outcome != OverlapOutcome::kUnresolved) j["winner"] = winner;
  if (outcome == OverlapOutcome::kAssignedByReprompt) {
    j["confidence"] = {first_confidence, second_confidence};
  }
  if (!error.empty()) j["error"] = error;
  return j;
}
namespace {

// Best confidence among proposals that touch the disputed pixels.
double SupportFor(const std::vector<SegmentProposal>& proposals, const BinaryMask& disputed,
                  const PixelRect& crop) {
  double best = 0.0;
  for (const SegmentProposal& p : proposals) {
    bool touches = false;
    for (int y = crop.y0; y < crop.y1 && !touches; ++y) {
      for (int x = crop.x0; x < crop.x1; ++x) {
        if (disputed.Get(x, y) && p.mask.Get(x - crop.x0, y - crop.y0)) {
          touches = true;
          break;
        }
      }
    }
    if (touches) best = std::max(best, p.confidence);
  }
  return best;
}

void ClearPixels(BinaryMask& target, const BinaryMask& region) {
  auto& d = target.mutable_data();
  const auto& r = region.data();
  for (size_t i = 0; i < d.size(); ++i)
    if (r[i]) d[i] = 0;
}

}  // namespace

OverlapResolution ResolveOverlaps(const std::vector<MaskRecord>& masks, ImageSize image,
                                  Segmenter* segmenter, const OverlapConfig& cfg) {
  OverlapResolution result;
  std::vector<BinaryMask> current;
  std::vector<int64_t> original_area;
  current.reserve(masks.size());
  for (const MaskRecord& m : masks) {
    if (m.mask.width() != image.width || m.mask.height() != image.height) {
      throw InvalidArgumentError("mask does not match the image dimensions");
    }
    current.push_back(m.mask);
    original_area.push_back(m.mask.Area());
  }
  const double image_area = double(image.width) * double(image.height);
  std::vector<bool> reduced(masks.size(), false);

  for (size_t i = 0; i < masks.size(); ++i) {
    for (size_t j = i + 1; j < masks.size(); ++j) {
      if (masks[i].frame_index != masks[j].frame_index) continue;
      if (masks[i].label == masks[j].label) continue;
      const PixelRect box = current[i].Bounds().Intersect(current[j].Bounds());
      if (box.Empty()) continue;
      BinaryMask disputed = Intersection(current[i], current[j]);
      const int64_t pixels = disputed.Area();
      if (pixels == 0) continue;

      OverlapEvent ev;
      ev.frame_index = masks[i].frame_index;
      ev.first = i;
      ev.second = j;
      ev.pixels = pixels;
      ev.crop = disputed.Bounds();

      if (double(pixels) < cfg.min_region_fraction * image_area) {
        ev.outcome = OverlapOutcome::kAssignedByArea;
        const int64_t ai = current[i].Area(), aj = current[j].Area();
        ev.winner = ai >= aj ? i : j;
      } else if (segmenter == nullptr) {
        ev.outcome = OverlapOutcome::kUnresolved;
        ev.error = "no segmenter available";
      } else {
        try {
          SegmentRequest ri{masks[i].frame_index, ev.crop, masks[i].label};
          SegmentRequest rj{masks[j].frame_index, ev.crop, masks[j].label};
          ev.first_confidence = SupportFor(segmenter->Segment(ri), disputed, ev.crop);
          ev.second_confidence = SupportFor(segmenter->Segment(rj), disputed, ev.crop);
          ev.outcome = OverlapOutcome::kAssignedByReprompt;
          if (ev.first_confidence > ev.second_confidence) {
            ev.winner = i;
          } else if (ev.second_confidence > ev.first_confidence) {
            ev.winner = j;
          } else {
            ev.tie = true;
            ev.winner = original_area[j] > original_area[i] ? j : i;
          }
        } catch (const SegmenterError& e) {
          ev.outcome = OverlapOutcome::kUnresolved;
          ev.error = e.what();
        }
      }
      if (ev.outcome != OverlapOutcome::kUnresolved) {
        const size_t loser = ev.winner == i ? j : i;
        ClearPixels(current[loser], disputed);
        reduced[loser] = true;
      }
      result.events.push_back(std::move(ev));
    }
  }

  for (size_t i = 0; i < masks.size(); ++i) {
    if (reduced[i] && double(current[i].Area()) < cfg.min_area_fraction * image_area) {
      result.dropped.push_back(i);
      continue;
    }
    MaskRecord out = masks[i];
    out.mask = std::move(current[i]);
    result.masks.push_back(std::move(out));
  }
  return result;
}

}  // namespace groundmem
