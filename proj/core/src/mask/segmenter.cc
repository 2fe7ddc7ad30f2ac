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

#include "groundmem/mask/segmenter.h"

#include <fstream>

#include "groundmem/io/png_io.h"
#include "groundmem/util/hash.h"

namespace groundmem {
namespace fs = std::filesystem;
using nlohmann::json;

json SegmentRequest::ToJson() const {
  return {{"frame_index", frame_index},
          {"crop", {crop.x0, crop.y0, crop.x1, crop.y1}},
          {"label", label}};
}

std::string SegmentRequest::Hash() const { return Sha256Hex(ToJson().dump()); }

std::vector<SegmentProposal> FileStubSegmenter::Segment(const SegmentRequest& request) {
  const fs::path path = dir_ / (request.Hash() + ".json");
  std::ifstream in(path);
  if (!in) {
    throw SegmenterError("no canned response for " + request.ToJson().dump() + " (" +
                         path.string() + ")");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw SegmenterError(path.string() + ": " + e.what());
  }
  std::vector<SegmentProposal> out;
  for (const json& p : doc.value("proposals", json::array())) {
    SegmentProposal prop;
    prop.confidence = p.at("confidence").get<double>();
    if (p.contains("mask")) {
      prop.mask = ReadMaskPng(dir_ / p.at("mask").get<std::string>());
      if (prop.mask.width() != request.crop.Width() ||
          prop.mask.height() != request.crop.Height()) {
        throw SegmenterError(path.string() + ": proposal mask does not match crop size");
      }
    } else {
      prop.mask = BinaryMask(request.crop.Width(), request.crop.Height());
      prop.mask.FillRect({0, 0, request.crop.Width(), request.crop.Height()});
    }
    out.push_back(std::move(prop));
  }
  return out;
}

void FileStubSegmenter::WriteResponse(const fs::path& dir, const SegmentRequest& request,
                                      const std::vector<SegmentProposal>& proposals) {
  fs::create_directories(dir);
  const std::string hash = request.Hash();
  json list = json::array();
  for (size_t i = 0; i < proposals.size(); ++i) {
    const std::string mask_file = hash + "_" + std::to_string(i) + ".png";
    WriteMaskPng(proposals[i].mask, dir / mask_file);
    list.push_back({{"confidence", proposals[i].confidence}, {"mask", mask_file}});
  }
  std::ofstream out(dir / (hash + ".json"));
  out << json{{"request", request.ToJson()}, {"proposals", list}}.dump(2) << "\n";
}

}  // namespace groundmem
