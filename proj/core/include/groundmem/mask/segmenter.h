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

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundmem/mask/binary_mask.h"

namespace groundmem {

// A text-prompted segmentation query restricted to a crop of one frame.
struct SegmentRequest {
  int frame_index = 0;
  PixelRect crop;
  std::string label;

  nlohmann::json ToJson() const;
  // SHA-256 of the compact, key-sorted JSON form.
  std::string Hash() const;
};

struct SegmentProposal {
  BinaryMask mask;  // crop-sized
  double confidence = 0.0;
};

class SegmenterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Open-vocabulary segmentation model contract. Implementations either
// tolerate concurrent Segment() calls or report IsConcurrent() == false, in
// which case callers serialize access.
class Segmenter {
 public:
  virtual ~Segmenter() = default;
  // Throws SegmenterError on failure.
  virtual std::vector<SegmentProposal> Segment(const SegmentRequest& request) = 0;
  virtual bool IsConcurrent() const { return false; }
};

// Replays canned responses from a directory: `<dir>/<request hash>.json`
// holding {"proposals": [{"confidence": c, "mask": "file.png"}]}. A proposal
// without "mask" covers the whole crop. Unknown requests fail.
class FileStubSegmenter : public Segmenter {
 public:
  explicit FileStubSegmenter(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::vector<SegmentProposal> Segment(const SegmentRequest& request) override;
  bool IsConcurrent() const override { return true; }

  // Writes a canned response in the format Segment() reads.
  static void WriteResponse(const std::filesystem::path& dir, const SegmentRequest& request,
                            const std::vector<SegmentProposal>& proposals);

 private:
  std::filesystem::path dir_;
};

// Adapter that serializes calls to a non-concurrent segmenter.
class SerializedSegmenter : public Segmenter {
 public:
  explicit SerializedSegmenter(Segmenter& inner) : inner_(inner) {}
  std::vector<SegmentProposal> Segment(const SegmentRequest& request) override {
    std::lock_guard<std::mutex> lock(mu_);
    return inner_.Segment(request);
  }
  bool IsConcurrent() const override { return true; }

 private:
  Segmenter& inner_;
  std::mutex mu_;
};

}  // namespace groundmem
