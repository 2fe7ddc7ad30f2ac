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

#include "synthetic_scene.h"

#include <cmath>
#include <random>

#include "groundmem/error.h"

namespace groundmem::synth {
namespace {

struct LatticePoint {
  Vec3 p;
  double along = 0.0;  // local x from the box's low end
};

std::vector<LatticePoint> Lattice(const SynthObject& o, const SynthConfig& cfg, int index) {
  std::mt19937_64 rng(cfg.seed * 1000003ULL + static_cast<uint64_t>(index));
  std::uniform_real_distribution<double> jit(-cfg.jitter, cfg.jitter);
  const int nx = static_cast<int>(std::floor(o.size.x() / cfg.spacing + 1e-9)) + 1;
  const int ny = static_cast<int>(std::floor(o.size.y() / cfg.spacing + 1e-9)) + 1;
  const int nz = static_cast<int>(std::floor(o.size.z() / cfg.spacing + 1e-9)) + 1;
  const double c = std::cos(o.yaw), s = std::sin(o.yaw);
  std::vector<LatticePoint> out;
  out.reserve(size_t(nx) * size_t(ny) * size_t(nz));
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      for (int k = 0; k < nz; ++k) {
        const double lx = i * cfg.spacing - o.size.x() / 2 + jit(rng);
        const double ly = j * cfg.spacing - o.size.y() / 2 + jit(rng);
        const double lz = k * cfg.spacing - o.size.z() / 2 + jit(rng);
        out.push_back({o.center + Vec3(c * lx - s * ly, s * lx + c * ly, lz),
                       i * cfg.spacing});
      }
    }
  }
  return out;
}

int WindowCount(const SynthConfig& cfg) {
  if (cfg.window >= 1.0 || cfg.stride <= 0.0) return 1;
  return static_cast<int>(std::floor((1.0 - cfg.window) / cfg.stride + 1e-9)) + 1;
}

}  // namespace

std::vector<SynthObject> DefaultObjects() {
  return {
      {"chair", Vec3(0.0, 0.0, 0.25), Vec3(0.6, 0.45, 0.45), 0.0},
      {"chair", Vec3(1.6, 0.3, 0.25), Vec3(0.6, 0.45, 0.45), 0.5},
      {"table", Vec3(0.7, 1.7, 0.4), Vec3(0.9, 0.6, 0.2), -0.3},
  };
}

PointList ObjectLattice(const SynthObject& object, const SynthConfig& cfg, int object_index) {
  PointList out;
  for (const LatticePoint& lp : Lattice(object, cfg, object_index)) out.push_back(lp.p);
  return out;
}

SceneBundle MakeSyntheticBundle(const std::vector<SynthObject>& objects, const SynthConfig& cfg,
                                SynthTruth* truth) {
  if (cfg.frames < 1 || cfg.width < 1 || cfg.height < 1 || !(cfg.spacing > 0.0)) {
    throw InvalidArgumentError("synthetic scene needs frames, size and spacing > 0");
  }
  std::vector<std::vector<LatticePoint>> lattices;
  size_t largest = 0;
  for (size_t o = 0; o < objects.size(); ++o) {
    lattices.push_back(Lattice(objects[o], cfg, static_cast<int>(o)));
    largest = std::max(largest, lattices.back().size());
  }
  const int windows = WindowCount(cfg);

  // Square blocks big enough for the largest window, packed row by row.
  const int margin_x = static_cast<int>(std::ceil(cfg.width * 0.06));
  const int margin_y = static_cast<int>(std::ceil(cfg.height * 0.06));
  const size_t per_window = windows == 1 ? largest
                                         : static_cast<size_t>(std::ceil(
                                               double(largest) * (cfg.window + 0.1)));
  const int side = static_cast<int>(std::ceil(std::sqrt(double(per_window))));
  const int gap = 2;
  const int cols = (cfg.width - 2 * margin_x + gap) / (side + gap);
  const int rows = (cfg.height - 2 * margin_y + gap) / (side + gap);
  if (cols < 1 || rows < 1 || size_t(cols) * size_t(rows) < objects.size()) {
    throw InvalidArgumentError("synthetic objects do not fit into " + std::to_string(cfg.width) +
                               "x" + std::to_string(cfg.height) + " frames");
  }

  SceneBundle bundle;
  bundle.meta.scene_id = cfg.scene_id;
  if (truth) {
    truth->objects = objects;
    truth->pixel_object.assign(size_t(cfg.frames), {});
  }
  std::mt19937_64 floor_rng(cfg.seed);
  std::uniform_real_distribution<double> floor_xy(-1.0, 3.0);

  for (int f = 0; f < cfg.frames; ++f) {
    auto pmap = std::make_shared<PointMap>(cfg.height, cfg.width);
    std::vector<int> owner(size_t(cfg.width) * size_t(cfg.height), -1);
    std::vector<MaskRecord> frame_masks;
    for (size_t o = 0; o < objects.size(); ++o) {
      const int w = f % windows;
      const double length = objects[o].size.x();
      const double lo = windows == 1 ? -1.0 : w * cfg.stride * length - 1e-9;
      const double hi = windows == 1 ? 1e300 : (w * cfg.stride + cfg.window) * length + 1e-9;
      const int bx = margin_x + static_cast<int>(o % size_t(cols)) * (side + gap);
      const int by = margin_y + static_cast<int>(o / size_t(cols)) * (side + gap);
      MaskRecord mr;
      mr.frame_index = f;
      mr.label = objects[o].label;
      mr.confidence = cfg.confidence;
      mr.mask = BinaryMask(cfg.width, cfg.height);
      int slot = 0;
      for (const LatticePoint& lp : lattices[o]) {
        if (lp.along < lo || lp.along > hi) continue;
        if (slot >= side * side) {
          throw InvalidArgumentError("synthetic window exceeds its pixel block");
        }
        const int x = bx + slot % side, y = by + slot / side;
        ++slot;
        pmap->Set(y, x, lp.p);
        mr.mask.Set(x, y, true);
        owner[size_t(y) * size_t(cfg.width) + size_t(x)] = static_cast<int>(o);
      }
      frame_masks.push_back(std::move(mr));
    }
    if (cfg.floor) {
      for (int y = 0; y < cfg.height; ++y) {
        for (int x = 0; x < cfg.width; ++x) {
          if (owner[size_t(y) * size_t(cfg.width) + size_t(x)] >= 0) continue;
          pmap->Set(y, x, Vec3(floor_xy(floor_rng), floor_xy(floor_rng), 0.0));
        }
      }
    }
    FrameRecord fr;
    fr.frame_index = f;
    fr.rgb_path = "frames/" + std::to_string(f) + ".png";
    fr.pointmap_path = "pointmaps/" + std::to_string(f) + ".pmap";
    fr.width = cfg.width;
    fr.height = cfg.height;
    fr.pointmap = pmap;
    fr.intrinsics = {100.0, 100.0, cfg.width / 2.0, cfg.height / 2.0};
    bundle.frames.push_back(std::move(fr));
    for (MaskRecord& m : frame_masks) bundle.masks.push_back(std::move(m));
    if (truth) truth->pixel_object[size_t(f)] = std::move(owner);
  }
  return bundle;
}

}  // namespace groundmem::synth
