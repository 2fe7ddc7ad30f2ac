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

#include <benchmark/benchmark.h>

#include "groundmem/config.h"
#include "groundmem/lift/grounding_pipeline.h"
#include "groundmem/memory/visual_memory.h"
#include "synth/synthetic_scene.h"

namespace groundmem {
namespace {

SceneBundle Bundle(int frames) {
  synth::SynthConfig cfg;
  cfg.frames = frames;
  cfg.width = 100;
  cfg.height = 100;
  cfg.spacing = 0.045;
  return synth::MakeSyntheticBundle(synth::DefaultObjects(), cfg);
}

void BM_CoverageRetrieve(benchmark::State& state) {
  const SceneBundle bundle = Bundle(int(state.range(0)));
  const std::vector<MemoryEntry> memory = BuildMemoryEntries(bundle);
  const Region region = RegionFromBox(Aabb{Vec3(-0.5, -0.5, 0.0), Vec3(0.5, 0.5, 0.6)});
  for (auto _ : state) benchmark::DoNotOptimize(Retrieve(memory, region, 4, 0.1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoverageRetrieve)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Grounding(benchmark::State& state) {
  const SceneBundle bundle = Bundle(int(state.range(0)));
  const EngineConfig config;
  GroundingOptions opts;
  opts.labels = {"chair", "table"};
  opts.jobs = int(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(RunGrounding(bundle, opts, config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Grounding)
    ->Args({10, 1})
    ->Args({100, 1})
    ->Args({100, 4})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace groundmem
