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

#include "groundmem/mask/binary_mask.h"

#include <algorithm>

#include "groundmem/error.h"

namespace groundmem {

PixelRect PixelRect::Intersect(const PixelRect& other) const {
  return {std::max(x0, other.x0), std::max(y0, other.y0), std::min(x1, other.x1),
          std::min(y1, other.y1)};
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw InvalidArgumentError("negative mask dimensions");
  data_.assign(size_t(width) * height, 0);
}

void BinaryMask::FillRect(const PixelRect& rect, bool on) {
  const PixelRect r = rect.Intersect({0, 0, width_, height_});
  for (int y = r.y0; y < r.y1; ++y) {
    std::fill_n(data_.begin() + size_t(y) * width_ + r.x0, r.Width(), on ? 1 : 0);
  }
}

int64_t BinaryMask::Area() const {
  return std::count_if(data_.begin(), data_.end(), [](uint8_t v) { return v != 0; });
}

PixelRect BinaryMask::Bounds() const {
  PixelRect r{width_, height_, 0, 0};
  for (int y = 0; y < height_; ++y) {
    const uint8_t* row = data_.data() + size_t(y) * width_;
    for (int x = 0; x < width_; ++x) {
      if (row[x]) {
        r.x0 = std::min(r.x0, x);
        r.x1 = std::max(r.x1, x + 1);
        r.y0 = std::min(r.y0, y);
        r.y1 = std::max(r.y1, y + 1);
      }
    }
  }
  if (r.Empty()) return {};
  return r;
}

int64_t IntersectionArea(const BinaryMask& a, const BinaryMask& b) {
  if (!a.SameShape(b)) throw InvalidArgumentError("mask shape mismatch");
  const auto& da = a.data();
  const auto& db = b.data();
  int64_t n = 0;
  for (size_t i = 0; i < da.size(); ++i) n += (da[i] & db[i]) != 0;
  return n;
}

double Iou(const BinaryMask& a, const BinaryMask& b) {
  const int64_t inter = IntersectionArea(a, b);
  const int64_t uni = a.Area() + b.Area() - inter;
  return uni == 0 ? 0.0 : double(inter) / double(uni);
}

BinaryMask Intersection(const BinaryMask& a, const BinaryMask& b) {
  if (!a.SameShape(b)) throw InvalidArgumentError("mask shape mismatch");
  BinaryMask out(a.width(), a.height());
  auto& d = out.mutable_data();
  for (size_t i = 0; i < d.size(); ++i) d[i] = (a.data()[i] & b.data()[i]) ? 1 : 0;
  return out;
}

}  // namespace groundmem
