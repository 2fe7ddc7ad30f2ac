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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groundmem/io/pmap.h"
#include "groundmem/mask/binary_mask.h"
#include "groundmem/types.h"

namespace groundmem {

struct FrameRecord {
  int frame_index = 0;
  // Relative to the bundle root.
  std::string rgb_path;
  std::string pointmap_path;
  std::string depth_path;  // empty when absent
  int width = 0;            // RGB / mask resolution
  int height = 0;
  std::shared_ptr<const PointMap> pointmap;
  std::shared_ptr<const DepthMap> depth;  // null when absent
  Intrinsics intrinsics;
  std::optional<Mat4> pose;  // camera-to-scene, row-major on disk
};

struct MaskRecord {
  int frame_index = 0;
  std::string label;
  double confidence = 0.0;
  BinaryMask mask;
  std::string file;  // relative path, filled by the loader / writer
};

struct SceneMeta {
  std::string scene_id;
  std::string units = "meters";
  std::string up_axis = "+z";
};

struct SceneBundle {
  std::filesystem::path root;
  SceneMeta meta;
  std::vector<FrameRecord> frames;  // frames[i].frame_index == i
  std::vector<MaskRecord> masks;

  const FrameRecord& Frame(int index) const { return frames.at(size_t(index)); }
  std::filesystem::path Resolve(const std::string& relative) const {
    return root / relative;
  }
  // Mask count per frame index.
  std::map<int, int> MaskCountsByFrame() const;
};

// Reads `manifest.json`, `masks.json` and every referenced binary under
// `root`, validating the full set of bundle invariants. Throws FormatError
// naming the file and field on the first violation.
SceneBundle LoadBundle(const std::filesystem::path& root);

// Writes the bundle layout under `root`. Relative paths are normalized to
// `frames/<i>.png`, `pointmaps/<i>.pmap`, `depth/<i>.dmap`, `masks/<i>_<j>.png`.
// RGB files are copied from the source bundle when available and otherwise
// written as blank placeholders of the declared size.
void WriteBundle(const SceneBundle& bundle, const std::filesystem::path& root);

}  // namespace groundmem
