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

#include <cstdint>
#include <vector>

namespace groundmem {

// Half-open pixel rectangle [x0, x1) x [y0, y1). x is the column.
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  bool Empty() const { return x1 <= x0 || y1 <= y0; }
  int Width() const { return x1 - x0; }
  int Height() const { return y1 - y0; }
  PixelRect Intersect(const PixelRect& other) const;

  bool operator==(const PixelRect&) const = default;
};

// Single-channel binary raster, row-major, one byte per pixel holding 0 or 1.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  bool SameShape(const BinaryMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool Get(int x, int y) const { return data_[size_t(y) * width_ + x] != 0; }
  void Set(int x, int y, bool on = true) { data_[size_t(y) * width_ + x] = on ? 1 : 0; }

  void FillRect(const PixelRect& rect, bool on = true);

  // Number of set pixels.
  int64_t Area() const;
  // Tight bounds of the set pixels; empty rect when Area() == 0.
  PixelRect Bounds() const;

  const std::vector<uint8_t>& data() const { return data_; }
  std::vector<uint8_t>& mutable_data() { return data_; }

  bool operator==(const BinaryMask&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> data_;
};

int64_t IntersectionArea(const BinaryMask& a, const BinaryMask& b);
double Iou(const BinaryMask& a, const BinaryMask& b);

// a AND b as a new mask; shapes must agree.
BinaryMask Intersection(const BinaryMask& a, const BinaryMask& b);

}  // namespace groundmem
