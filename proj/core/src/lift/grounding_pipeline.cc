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

#include "groundmem/lift/grounding_pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <set>
#include <thread>

#include "groundmem/lift/clean.h"
#include "groundmem/lift/lift.h"
#include "groundmem/mask/mask_filters.h"

namespace groundmem {
using nlohmann::json;

namespace {

struct FrameOutput {
  std::vector<ObservedCluster> clusters;
  std::vector<AuditEntry> discarded;
  std::vector<OverlapEvent> events;
  GroundingStats stats;
};

FrameOutput ProcessFrame(const SceneBundle& bundle, int frame_index,
                         const std::vector<const MaskRecord*>& frame_masks,
                         const std::set<std::string>& labels, Segmenter* segmenter,
                         const EngineConfig& cfg) {
  const FrameRecord& frame = bundle.Frame(frame_index);
  const ImageSize image{frame.width, frame.height};
  const bool mirror_requested = labels.count(kMirrorLabel) != 0;

  std::vector<MaskRecord> candidates, mirrors;
  for (const MaskRecord* m : frame_masks) {
    if (labels.count(m->label)) {
      candidates.push_back(*m);
    } else if (!mirror_requested && m->label == kMirrorLabel &&
               m->confidence >= cfg.filter.min_confidence) {
      mirrors.push_back(*m);
    }
  }

  FrameOutput out;
  out.stats.masks_in = int(candidates.size());
  auto masks = FilterMasks(candidates, image, cfg.filter);
  out.stats.masks_after_filter = int(masks.size());
  masks = SuppressDuplicates(masks, cfg.filter.dup_iou);
  out.stats.masks_after_dedup = int(masks.size());
  masks = ApplyMirrorPolicy(masks, mirrors, cfg.filter.mirror_overlap);
  out.stats.masks_after_mirror = int(masks.size());
  OverlapResolution resolved = ResolveOverlaps(masks, image, segmenter, cfg.Overlap());
  out.events = std::move(resolved.events);
  out.stats.masks_after_overlap = int(resolved.masks.size());

  for (const MaskRecord& m : resolved.masks) {
    const PointList raw = LiftMask(frame, m.mask, cfg.association.lift_source);
    PointList cleaned = CleanPoints(raw, cfg.clean);
    if (cleaned.empty()) {
      out.discarded.push_back({frame_index, m.label, "discarded", -1, 0.0});
      continue;
    }
    out.clusters.push_back({m.label, frame_index, std::move(cleaned)});
  }
  out.stats.clusters = int(out.clusters.size());
  return out;
}

}  // namespace

json GroundingStats::ToJson() const {
  return {{"masks_in", masks_in},
          {"masks_after_filter", masks_after_filter},
          {"masks_after_dedup", masks_after_dedup},
          {"masks_after_mirror", masks_after_mirror},
          {"masks_after_overlap", masks_after_overlap},
          {"clusters", clusters},
          {"instances_associated", instances_associated},
          {"instances_refined", instances_refined},
          {"instances_final", instances_final}};
}

json AuditEntry::ToJson() const {
  return {{"frame", frame_index},
          {"label", label},
          {"decision", decision},
          {"target_id", target_id},
          {"score", score}};
}

GroundingResult RunGrounding(const SceneBundle& bundle, const GroundingOptions& options,
                             const EngineConfig& config) {
  config.Validate();
  const std::set<std::string> labels(options.labels.begin(), options.labels.end());
  const size_t num_frames = bundle.frames.size();

  std::vector<std::vector<const MaskRecord*>> by_frame(num_frames);
  for (const MaskRecord& m : bundle.masks) by_frame[size_t(m.frame_index)].push_back(&m);

  std::optional<SerializedSegmenter> serialized;
  Segmenter* segmenter = options.segmenter;
  const int jobs = std::max(1, std::min<int>(options.jobs, int(num_frames)));
  if (segmenter && jobs > 1 && !segmenter->IsConcurrent()) {
    serialized.emplace(*segmenter);
    segmenter = &*serialized;
  }

  std::vector<FrameOutput> outputs(num_frames);
  if (jobs == 1) {
    for (size_t f = 0; f < num_frames; ++f) {
      outputs[f] = ProcessFrame(bundle, int(f), by_frame[f], labels, segmenter, config);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (size_t f = next++; f < num_frames; f = next++) {
            outputs[f] = ProcessFrame(bundle, int(f), by_frame[f], labels, segmenter, config);
          }
        } catch (...) {
          errors[size_t(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  GroundingResult result;
  InstanceStore store(config.association.voxel);
  for (FrameOutput& out : outputs) {
    result.stats.masks_in += out.stats.masks_in;
    result.stats.masks_after_filter += out.stats.masks_after_filter;
    result.stats.masks_after_dedup += out.stats.masks_after_dedup;
    result.stats.masks_after_mirror += out.stats.masks_after_mirror;
    result.stats.masks_after_overlap += out.stats.masks_after_overlap;
    result.stats.clusters += out.stats.clusters;
    for (auto& e : out.events) result.overlap_events.push_back(std::move(e));
    for (auto& d : out.discarded) result.audit.push_back(std::move(d));
    for (const ObservedCluster& c : out.clusters) {
      const AssociationDecision d = store.Associate(c, config.association.tau);
      result.audit.push_back({d.frame_index, d.label,
                              d.kind == AssociationDecision::Kind::kMerged ? "merged" : "created",
                              d.target_id, d.score});
    }
  }
  result.stats.instances_associated = int(store.instances().size());
  auto refined = RefineInstances(store.Release(), config.association.min_support, config.yaw);
  result.stats.instances_refined = int(refined.size());
  result.instances = BevMerge(std::move(refined), config.association.bev_iou, config.yaw);
  result.stats.instances_final = int(result.instances.size());
  return result;
}

}  // namespace groundmem
