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
#include <string>
#include <vector>

#include "groundmem/io/bundle.h"
#include "groundmem/types.h"

namespace groundmem::synth {

// A solid box of lattice points. Local x runs along the box length.
struct SynthObject {
  std::string label;
  Vec3 center = Vec3::Zero();
  Vec3 size = Vec3(0.6, 0.45, 0.45);
  double yaw = 0.0;
};

struct SynthConfig {
  int frames = 10;
  int width = 240;
  int height = 160;
  double spacing = 0.03;  // lattice pitch
  double jitter = 0.002;  // fixed per lattice point, identical across frames
  // Each frame sees a slab of every object spanning `window` of its length,
  // starting at offset (frame % windows) * stride, so consecutive frames
  // see overlapping slabs.
  double window = 0.5;  // fraction of the length
  double stride = 0.25;
  // Unmasked pixels receive floor points at z = 0 instead of staying invalid.
  bool floor = true;
  double confidence = 0.9;
  uint64_t seed = 7;
  std::string scene_id = "synthetic";
};

struct SynthTruth {
  // object index per pixel per frame, -1 for floor or invalid
  std::vector<std::vector<int>> pixel_object;
  std::vector<SynthObject> objects;
};

// Deterministic bundle with one mask per object per frame. Objects are laid
// out as square pixel blocks inside the image, clear of the 5% border band.
// Throws InvalidArgumentError when the blocks do not fit.
SceneBundle MakeSyntheticBundle(const std::vector<SynthObject>& objects, const SynthConfig& cfg,
                                SynthTruth* truth = nullptr);

// Two chairs and a table, well separated.
std::vector<SynthObject> DefaultObjects();

// Full lattice of an object in scene coordinates.
PointList ObjectLattice(const SynthObject& object, const SynthConfig& cfg, int object_index);

}  // namespace groundmem::synth
