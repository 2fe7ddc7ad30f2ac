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

#include "groundmem/mask/mask_filters.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "groundmem/error.h"

namespace groundmem {

void FilterConfig::Validate() const {
  const std::pair<const char*, double> fields[] = {
      {"min_confidence", min_confidence},         {"min_area_fraction", min_area_fraction},
      {"margin_fraction", margin_fraction},       {"max_margin_coverage", max_margin_coverage},
      {"dup_iou", dup_iou},                       {"mirror_overlap", mirror_overlap}};
  for (const auto& [name, value] : fields) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw InvalidArgumentError(std::string("filter.") + name + " must lie in [0, 1]");
    }
  }
}

int64_t MarginPixels(const BinaryMask& mask, double margin_fraction) {
  const double mx = margin_fraction * mask.width();
  const double my = margin_fraction * mask.height();
  int64_t n = 0;
  for (int y = 0; y < mask.height(); ++y) {
    const bool row_in_band = y < my || y >= mask.height() - my;
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.Get(x, y)) continue;
      if (row_in_band || x < mx || x >= mask.width() - mx) ++n;
    }
  }
  return n;
}

std::vector<MaskRecord> FilterMasks(const std::vector<MaskRecord>& masks, ImageSize image,
                                    const FilterConfig& cfg) {
  const double image_area = double(image.width) * double(image.height);
  std::vector<MaskRecord> kept;
  for (const MaskRecord& m : masks) {
    if (m.mask.width() != image.width || m.mask.height() != image.height) {
      throw InvalidArgumentError("mask for frame " + std::to_string(m.frame_index) +
                                 " does not match the image dimensions");
    }
    if (m.confidence < cfg.min_confidence) continue;
    const int64_t area = m.mask.Area();
    if (area == 0 || double(area) < cfg.min_area_fraction * image_area) continue;
    const int64_t band = MarginPixels(m.mask, cfg.margin_fraction);
    if (double(band) > cfg.max_margin_coverage * double(area)) continue;
    kept.push_back(m);
  }
  return kept;
}

std::vector<MaskRecord> SuppressDuplicates(const std::vector<MaskRecord>& masks,
                                           double dup_iou) {
  std::map<std::pair<int, std::string>, std::vector<size_t>> groups;
  for (size_t i = 0; i < masks.size(); ++i) {
    groups[{masks[i].frame_index, masks[i].label}].push_back(i);
  }
  std::vector<int64_t> areas(masks.size());
  for (size_t i = 0; i < masks.size(); ++i) areas[i] = masks[i].mask.Area();

  std::vector<bool> keep(masks.size(), false);
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(), [&](size_t a, size_t b) {
      if (areas[a] != areas[b]) return areas[a] > areas[b];
      const auto& da = masks[a].mask.data();
      const auto& db = masks[b].mask.data();
      if (da != db) return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
      if (masks[a].confidence != masks[b].confidence) {
        return masks[a].confidence > masks[b].confidence;
      }
      return a < b;
    });
    std::vector<size_t> retained;
    for (size_t idx : members) {
      bool duplicate = false;
      for (size_t r : retained) {
        const int64_t inter = IntersectionArea(masks[idx].mask, masks[r].mask);
        const int64_t uni = areas[idx] + areas[r] - inter;
        if (uni > 0 && double(inter) / double(uni) > dup_iou) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) retained.push_back(idx);
    }
    for (size_t r : retained) keep[r] = true;
  }
  std::vector<MaskRecord> out;
  for (size_t i = 0; i < masks.size(); ++i)
    if (keep[i]) out.push_back(masks[i]);
  return out;
}

std::vector<MaskRecord> ApplyMirrorPolicy(const std::vector<MaskRecord>& masks,
                                          const std::vector<MaskRecord>& mirror_masks,
                                          double mirror_overlap) {
  std::vector<MaskRecord> out;
  for (const MaskRecord& m : masks) {
    const int64_t area = m.mask.Area();
    bool reflected = false;
    for (const MaskRecord& mirror : mirror_masks) {
      if (mirror.frame_index != m.frame_index || area == 0) continue;
      if (!mirror.mask.SameShape(m.mask)) {
        throw InvalidArgumentError("mirror mask does not match the frame dimensions");
      }
      const double ratio = double(IntersectionArea(m.mask, mirror.mask)) / double(area);
      if (ratio > mirror_overlap) {
        reflected = true;
        break;
      }
    }
    if (!reflected) out.push_back(m);
  }
  return out;
}

}  // namespace groundmem
