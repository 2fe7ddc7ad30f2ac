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
#include <filesystem>
#include <string>
#include <vector>

#include "groundmem/types.h"

namespace groundmem {

// Dense per-pixel scene-frame coordinates, row-major, 3 floats per pixel.
// NaN in any channel marks the pixel invalid.
//
// On disk ("PMAP"): 4-byte magic, then little-endian uint32 H, W, C=3, then
// H*W*3 little-endian float32.
struct PointMap {
  uint32_t height = 0;
  uint32_t width = 0;
  std::vector<float> xyz;

  PointMap() = default;
  PointMap(uint32_t h, uint32_t w);

  size_t NumPixels() const { return static_cast<size_t>(height) * width; }

  bool IsValid(uint32_t row, uint32_t col) const;
  Vec3 At(uint32_t row, uint32_t col) const;
  void Set(uint32_t row, uint32_t col, const Vec3& p);
  void SetInvalid(uint32_t row, uint32_t col);
};

// Per-pixel metric depth. Same container with magic "DMAP" and C=1.
// Zero or non-finite depth is invalid.
struct DepthMap {
  uint32_t height = 0;
  uint32_t width = 0;
  std::vector<float> depth;

  DepthMap() = default;
  DepthMap(uint32_t h, uint32_t w) : height(h), width(w), depth(size_t(h) * w, 0.f) {}

  float At(uint32_t row, uint32_t col) const { return depth[size_t(row) * width + col]; }
};

PointMap ReadPointMap(const std::filesystem::path& path);
void WritePointMap(const PointMap& map, const std::filesystem::path& path);

DepthMap ReadDepthMap(const std::filesystem::path& path);
void WriteDepthMap(const DepthMap& map, const std::filesystem::path& path);

// Decoding from an in-memory buffer; `source` only labels error messages.
PointMap DecodePointMap(const std::vector<uint8_t>& bytes, const std::string& source);
std::vector<uint8_t> EncodePointMap(const PointMap& map);

}  // namespace groundmem
