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

#include "groundmem/io/pmap.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "groundmem/error.h"

namespace groundmem {
namespace {

constexpr size_t kHeaderBytes = 16;

uint32_t LoadU32(const uint8_t* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}

void StoreU32(uint32_t v, std::vector<uint8_t>* out) {
  for (int i = 0; i < 4; ++i) out->push_back(uint8_t(v >> (8 * i)));
}

float LoadF32(const uint8_t* p) {
  return std::bit_cast<float>(LoadU32(p));
}

void StoreF32(float v, std::vector<uint8_t>* out) {
  StoreU32(std::bit_cast<uint32_t>(v), out);
}

std::vector<uint8_t> ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string(), "file", "cannot open");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteAll(const std::vector<uint8_t>& bytes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(path.string(), "file", "cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(path.string(), "file", "write failed");
}

struct Raster {
  uint32_t height = 0;
  uint32_t width = 0;
  std::vector<float> values;
};

Raster DecodeRaster(const std::vector<uint8_t>& bytes, const std::string& source,
                    const char magic[4], uint32_t channels) {
  if (bytes.size() < kHeaderBytes) {
    throw FormatError(source, "header", "truncated header (" +
                                            std::to_string(bytes.size()) + " bytes)");
  }
  if (std::memcmp(bytes.data(), magic, 4) != 0) {
    throw FormatError(source, "magic",
                      std::string("expected \"") + std::string(magic, 4) + "\"");
  }
  Raster r;
  r.height = LoadU32(bytes.data() + 4);
  r.width = LoadU32(bytes.data() + 8);
  const uint32_t c = LoadU32(bytes.data() + 12);
  if (c != channels) {
    throw FormatError(source, "channels", "expected " + std::to_string(channels) +
                                              ", got " + std::to_string(c));
  }
  const uint64_t count = uint64_t(r.height) * r.width * c;
  const uint64_t payload = bytes.size() - kHeaderBytes;
  if (payload != count * 4) {
    throw FormatError(source, "payload",
                      "header declares " + std::to_string(r.height) + "x" +
                          std::to_string(r.width) + "x" + std::to_string(c) + " = " +
                          std::to_string(count) + " floats but payload holds " +
                          std::to_string(payload) + " bytes (" +
                          std::to_string(payload / 4.0) + " floats)");
  }
  r.values.resize(count);
  const uint8_t* p = bytes.data() + kHeaderBytes;
  for (uint64_t i = 0; i < count; ++i) r.values[i] = LoadF32(p + 4 * i);
  return r;
}

std::vector<uint8_t> EncodeRaster(uint32_t h, uint32_t w, uint32_t c,
                                  const std::vector<float>& values, const char magic[4]) {
  std::vector<uint8_t> out;
  out.reserve(kHeaderBytes + values.size() * 4);
  out.insert(out.end(), magic, magic + 4);
  StoreU32(h, &out);
  StoreU32(w, &out);
  StoreU32(c, &out);
  for (float v : values) StoreF32(v, &out);
  return out;
}

constexpr char kPointMagic[4] = {'P', 'M', 'A', 'P'};
constexpr char kDepthMagic[4] = {'D', 'M', 'A', 'P'};

}  // namespace

PointMap::PointMap(uint32_t h, uint32_t w)
    : height(h), width(w),
      xyz(size_t(h) * w * 3, std::numeric_limits<float>::quiet_NaN()) {}

bool PointMap::IsValid(uint32_t row, uint32_t col) const {
  const float* p = &xyz[(size_t(row) * width + col) * 3];
  return std::isfinite(p[0]) && std::isfinite(p[1]) && std::isfinite(p[2]);
}

Vec3 PointMap::At(uint32_t row, uint32_t col) const {
  const float* p = &xyz[(size_t(row) * width + col) * 3];
  return {p[0], p[1], p[2]};
}

void PointMap::Set(uint32_t row, uint32_t col, const Vec3& p) {
  float* q = &xyz[(size_t(row) * width + col) * 3];
  q[0] = static_cast<float>(p.x());
  q[1] = static_cast<float>(p.y());
  q[2] = static_cast<float>(p.z());
}

void PointMap::SetInvalid(uint32_t row, uint32_t col) {
  float* q = &xyz[(size_t(row) * width + col) * 3];
  q[0] = q[1] = q[2] = std::numeric_limits<float>::quiet_NaN();
}

PointMap DecodePointMap(const std::vector<uint8_t>& bytes, const std::string& source) {
  Raster r = DecodeRaster(bytes, source, kPointMagic, 3);
  PointMap map;
  map.height = r.height;
  map.width = r.width;
  map.xyz = std::move(r.values);
  return map;
}

std::vector<uint8_t> EncodePointMap(const PointMap& map) {
  if (map.xyz.size() != map.NumPixels() * 3) {
    throw InvalidArgumentError("point map payload does not match its dimensions");
  }
  return EncodeRaster(map.height, map.width, 3, map.xyz, kPointMagic);
}

PointMap ReadPointMap(const std::filesystem::path& path) {
  return DecodePointMap(ReadAll(path), path.string());
}

void WritePointMap(const PointMap& map, const std::filesystem::path& path) {
  WriteAll(EncodePointMap(map), path);
}

DepthMap ReadDepthMap(const std::filesystem::path& path) {
  Raster r = DecodeRaster(ReadAll(path), path.string(), kDepthMagic, 1);
  DepthMap map;
  map.height = r.height;
  map.width = r.width;
  map.depth = std::move(r.values);
  return map;
}

void WriteDepthMap(const DepthMap& map, const std::filesystem::path& path) {
  if (map.depth.size() != size_t(map.height) * map.width) {
    throw InvalidArgumentError("depth map payload does not match its dimensions");
  }
  WriteAll(EncodeRaster(map.height, map.width, 1, map.depth, kDepthMagic), path);
}

}  // namespace groundmem
