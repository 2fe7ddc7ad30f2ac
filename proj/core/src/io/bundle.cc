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

#include "groundmem/io/bundle.h"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "groundmem/error.h"
#include "groundmem/io/png_io.h"

namespace groundmem {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), "file", "missing or unreadable");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string(), "json", e.what());
  }
}

void WriteJsonFile(const json& doc, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError(path.string(), "file", "cannot open for writing");
  out << doc.dump(2) << "\n";
}

// Field accessors that report the location of a bad value.
class Fields {
 public:
  Fields(const json& obj, std::string path, std::string prefix)
      : obj_(obj), path_(std::move(path)), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) throw FormatError(path_, prefix_, "expected an object");
  }

  const json& Required(const std::string& key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) throw FormatError(path_, Name(key), "missing");
    return *it;
  }

  bool Has(const std::string& key) const {
    auto it = obj_.find(key);
    return it != obj_.end() && !it->is_null();
  }

  double Number(const std::string& key) const {
    const json& v = Required(key);
    if (!v.is_number()) throw FormatError(path_, Name(key), "expected a number");
    return v.get<double>();
  }

  int64_t Integer(const std::string& key) const {
    const json& v = Required(key);
    if (!v.is_number_integer()) throw FormatError(path_, Name(key), "expected an integer");
    return v.get<int64_t>();
  }

  std::string String(const std::string& key) const {
    const json& v = Required(key);
    if (!v.is_string()) throw FormatError(path_, Name(key), "expected a string");
    return v.get<std::string>();
  }

  std::string Name(const std::string& key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

  const std::string& path() const { return path_; }

 private:
  const json& obj_;
  std::string path_;
  std::string prefix_;
};

fs::path RequireFile(const fs::path& root, const std::string& rel,
                     const std::string& manifest, const std::string& field) {
  const fs::path p = root / rel;
  if (!fs::is_regular_file(p)) {
    throw FormatError(manifest, field, "referenced file not found: " + p.string());
  }
  return p;
}

Intrinsics ParseIntrinsics(const Fields& frame) {
  Fields k(frame.Required("intrinsics"), frame.path(), frame.Name("intrinsics"));
  Intrinsics in{k.Number("fx"), k.Number("fy"), k.Number("cx"), k.Number("cy")};
  if (!in.IsValid()) {
    throw FormatError(frame.path(), frame.Name("intrinsics"),
                      "fx, fy must be positive and all entries finite");
  }
  return in;
}

Mat4 ParsePose(const json& v, const std::string& path, const std::string& field) {
  if (!v.is_array() || v.size() != 16) {
    throw FormatError(path, field, "expected 16 numbers (row-major 4x4)");
  }
  Mat4 m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const json& e = v[size_t(r * 4 + c)];
      if (!e.is_number() || !std::isfinite(e.get<double>())) {
        throw FormatError(path, field, "non-numeric or non-finite entry");
      }
      m(r, c) = e.get<double>();
    }
  }
  return m;
}

}  // namespace

std::map<int, int> SceneBundle::MaskCountsByFrame() const {
  std::map<int, int> counts;
  for (const auto& m : masks) ++counts[m.frame_index];
  return counts;
}

SceneBundle LoadBundle(const fs::path& root) {
  SceneBundle bundle;
  bundle.root = root;
  const fs::path manifest_path = root / "manifest.json";
  const std::string manifest = manifest_path.string();
  const json doc = ReadJsonFile(manifest_path);
  Fields top(doc, manifest, "");

  bundle.meta.scene_id = top.Has("scene_id") ? top.String("scene_id") : "";
  if (top.Has("units")) bundle.meta.units = top.String("units");
  if (top.Has("up_axis")) bundle.meta.up_axis = top.String("up_axis");
  if (bundle.meta.units != "meters") {
    throw FormatError(manifest, "units", "only \"meters\" is supported");
  }
  if (bundle.meta.up_axis != "+z") {
    throw FormatError(manifest, "up_axis", "only \"+z\" is supported");
  }

  const json& frames = top.Required("frames");
  if (!frames.is_array()) throw FormatError(manifest, "frames", "expected an array");

  std::map<int, FrameRecord> by_index;
  for (size_t i = 0; i < frames.size(); ++i) {
    Fields f(frames[i], manifest, "frames[" + std::to_string(i) + "]");
    FrameRecord rec;
    const int64_t index = f.Integer("index");
    if (index < 0) throw FormatError(manifest, f.Name("index"), "negative frame index");
    rec.frame_index = static_cast<int>(index);
    if (by_index.count(rec.frame_index)) {
      throw FormatError(manifest, f.Name("index"),
                        "duplicate frame index " + std::to_string(index));
    }
    rec.width = static_cast<int>(f.Integer("width"));
    rec.height = static_cast<int>(f.Integer("height"));
    if (rec.width <= 0 || rec.height <= 0) {
      throw FormatError(manifest, f.Name("width"), "image dimensions must be positive");
    }
    rec.intrinsics = ParseIntrinsics(f);
    rec.rgb_path = f.String("rgb");
    RequireFile(root, rec.rgb_path, manifest, f.Name("rgb"));
    rec.pointmap_path = f.String("pointmap");
    rec.pointmap = std::make_shared<PointMap>(
        ReadPointMap(RequireFile(root, rec.pointmap_path, manifest, f.Name("pointmap"))));
    if (f.Has("depth")) {
      rec.depth_path = f.String("depth");
      auto depth = std::make_shared<DepthMap>(
          ReadDepthMap(RequireFile(root, rec.depth_path, manifest, f.Name("depth"))));
      if (depth->width != uint32_t(rec.width) || depth->height != uint32_t(rec.height)) {
        throw FormatError((root / rec.depth_path).string(), "dimensions",
                          "depth map must match the image size");
      }
      rec.depth = std::move(depth);
    }
    if (f.Has("pose")) rec.pose = ParsePose(f.Required("pose"), manifest, f.Name("pose"));
    by_index.emplace(rec.frame_index, std::move(rec));
  }
  int expected = 0;
  for (auto& [index, rec] : by_index) {
    if (index != expected) {
      throw FormatError(manifest, "frames",
                        "frame indices must be dense from 0; missing index " +
                            std::to_string(expected));
    }
    bundle.frames.push_back(std::move(rec));
    ++expected;
  }
  if (bundle.frames.empty()) throw FormatError(manifest, "frames", "no frames");

  const fs::path masks_path = root / "masks.json";
  if (fs::exists(masks_path)) {
    const std::string mpath = masks_path.string();
    const json mdoc = ReadJsonFile(masks_path);
    const json* list = &mdoc;
    if (mdoc.is_object()) list = &Fields(mdoc, mpath, "").Required("masks");
    if (!list->is_array()) throw FormatError(mpath, "masks", "expected an array");
    for (size_t i = 0; i < list->size(); ++i) {
      Fields m((*list)[i], mpath, "masks[" + std::to_string(i) + "]");
      MaskRecord rec;
      const int64_t fi = m.Integer("frame_index");
      if (fi < 0 || fi >= int64_t(bundle.frames.size())) {
        throw FormatError(mpath, m.Name("frame_index"),
                          "references missing frame " + std::to_string(fi));
      }
      rec.frame_index = static_cast<int>(fi);
      rec.label = m.String("label");
      rec.confidence = m.Number("confidence");
      if (!(rec.confidence >= 0.0 && rec.confidence <= 1.0)) {
        throw FormatError(mpath, m.Name("confidence"), "must lie in [0, 1]");
      }
      rec.file = m.String("file");
      rec.mask = ReadMaskPng(RequireFile(root, rec.file, mpath, m.Name("file")));
      const FrameRecord& frame = bundle.frames[size_t(fi)];
      if (rec.mask.width() != frame.width || rec.mask.height() != frame.height) {
        throw FormatError((root / rec.file).string(), "dimensions",
                          "mask is " + std::to_string(rec.mask.width()) + "x" +
                              std::to_string(rec.mask.height()) + ", frame is " +
                              std::to_string(frame.width) + "x" +
                              std::to_string(frame.height));
      }
      bundle.masks.push_back(std::move(rec));
    }
  }
  return bundle;
}

void WriteBundle(const SceneBundle& bundle, const fs::path& root) {
  fs::create_directories(root / "frames");
  fs::create_directories(root / "pointmaps");
  fs::create_directories(root / "masks");

  json frames = json::array();
  for (size_t i = 0; i < bundle.frames.size(); ++i) {
    const FrameRecord& f = bundle.frames[i];
    if (f.frame_index != int(i)) {
      throw InvalidArgumentError("frame indices must be dense from 0 when writing");
    }
    if (!f.pointmap) throw InvalidArgumentError("frame without point map");
    const std::string idx = std::to_string(i);
    json jf = {{"index", f.frame_index},
               {"rgb", "frames/" + idx + ".png"},
               {"pointmap", "pointmaps/" + idx + ".pmap"},
               {"width", f.width},
               {"height", f.height},
               {"intrinsics",
                {{"fx", f.intrinsics.fx},
                 {"fy", f.intrinsics.fy},
                 {"cx", f.intrinsics.cx},
                 {"cy", f.intrinsics.cy}}}};

    const fs::path rgb_out = root / "frames" / (idx + ".png");
    const fs::path rgb_src = bundle.root.empty() ? fs::path() : bundle.Resolve(f.rgb_path);
    if (!rgb_src.empty() && fs::is_regular_file(rgb_src)) {
      if (!fs::exists(rgb_out) || !fs::equivalent(rgb_src, rgb_out)) {
        fs::copy_file(rgb_src, rgb_out, fs::copy_options::overwrite_existing);
      }
    } else {
      WriteMaskPng(BinaryMask(f.width, f.height), rgb_out);
    }
    WritePointMap(*f.pointmap, root / "pointmaps" / (idx + ".pmap"));
    if (f.depth) {
      fs::create_directories(root / "depth");
      WriteDepthMap(*f.depth, root / "depth" / (idx + ".dmap"));
      jf["depth"] = "depth/" + idx + ".dmap";
    }
    if (f.pose) {
      json pose = json::array();
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) pose.push_back((*f.pose)(r, c));
      jf["pose"] = pose;
    }
    frames.push_back(std::move(jf));
  }
  json manifest = {{"scene_id", bundle.meta.scene_id},
                   {"units", bundle.meta.units},
                   {"up_axis", bundle.meta.up_axis},
                   {"frames", frames}};
  WriteJsonFile(manifest, root / "manifest.json");

  std::map<int, int> ordinal;
  json masks = json::array();
  for (const MaskRecord& m : bundle.masks) {
    const int j = ordinal[m.frame_index]++;
    const std::string rel =
        "masks/" + std::to_string(m.frame_index) + "_" + std::to_string(j) + ".png";
    WriteMaskPng(m.mask, root / rel);
    masks.push_back({{"frame_index", m.frame_index},
                     {"label", m.label},
                     {"confidence", m.confidence},
                     {"file", rel}});
  }
  WriteJsonFile(json{{"masks", masks}}, root / "masks.json");
}

}  // namespace groundmem
