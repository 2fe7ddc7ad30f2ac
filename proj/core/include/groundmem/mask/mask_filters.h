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

#include <vector>

#include "groundmem/io/bundle.h"

namespace groundmem {

struct FilterConfig {
  double min_confidence = 0.5;
  double min_area_fraction = 0.001;   // of H*W
  double margin_fraction = 0.05;      // border band width, per image side
  double max_margin_coverage = 0.5;   // of mask area
  double dup_iou = 0.8;
  double mirror_overlap = 0.5;

  // Throws InvalidArgumentError when any field leaves [0, 1].
  void Validate() const;
};

struct ImageSize {
  int width = 0;
  int height = 0;
};

// Pixels with x < m*W, x >= W - m*W, y < m*H or y >= H - m*H.
int64_t MarginPixels(const BinaryMask& mask, double margin_fraction);

// Drops low-confidence masks, masks below the area floor (strictly less than
// min_area_fraction * H * W) and masks with strictly more than
// max_margin_coverage of their pixels inside the border band. Order of
// survivors is preserved. Throws InvalidArgumentError on a dimension mismatch.
std::vector<MaskRecord> FilterMasks(const std::vector<MaskRecord>& masks, ImageSize image,
                                    const FilterConfig& cfg);

// Greedy same-label suppression within each (frame, label) group. Masks are
// visited by descending area; a mask whose IoU with any already retained
// mask exceeds `dup_iou` is removed. Equal areas are ordered by pixel
// content, then confidence, then input index, so the retained set does not
// depend on input order. Survivors keep their relative input order.
std::vector<MaskRecord> SuppressDuplicates(const std::vector<MaskRecord>& masks,
                                           double dup_iou);

// Removes every mask M_i for which some mirror mask M_m of the same frame has
// |M_i n M_m| / |M_i| > mirror_overlap. Mirror masks are not touched.
std::vector<MaskRecord> ApplyMirrorPolicy(const std::vector<MaskRecord>& masks,
                                          const std::vector<MaskRecord>& mirror_masks,
                                          double mirror_overlap);

}  // namespace groundmem
