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

#include "groundmem/config.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "groundmem/error.h"

namespace groundmem {
using nlohmann::json;

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

// Applies `section` keys onto fields through typed setters, rejecting
// unknown keys and wrong types.
class Section {
 public:
  Section(const json& root, const std::string& name) : name_(name) {
    auto it = root.find(name);
    if (it == root.end()) return;
    if (!it->is_object()) throw InvalidArgumentError("config." + name + " must be an object");
    obj_ = &*it;
    for (auto& [key, _] : it->items()) unused_.insert(key);
  }

  template <typename T>
  void Read(const std::string& key, T* out) {
    if (!obj_) return;
    auto it = obj_->find(key);
    if (it == obj_->end()) return;
    unused_.erase(key);
    try {
      *out = it->get<T>();
    } catch (const json::exception&) {
      throw InvalidArgumentError("config." + name_ + "." + key + " has the wrong type");
    }
  }

  void Finish() const {
    if (!unused_.empty()) {
      throw InvalidArgumentError("config." + name_ + ": unknown key \"" + *unused_.begin() + "\"");
    }
  }

 private:
  std::string name_;
  const json* obj_ = nullptr;
  std::set<std::string> unused_;
};

void Require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgumentError("config." + what);
}

}  // namespace

void EngineConfig::Validate() const {
  Require(association.tau >= 0.0 && association.tau <= 1.0, "association.tau must lie in [0, 1]");
  Require(association.voxel > 0.0, "association.voxel must be positive");
  Require(association.min_support >= 0, "association.min_support must be non-negative");
  Require(association.bev_iou >= 0.0 && association.bev_iou <= 1.0,
          "association.bev_iou must lie in [0, 1]");
  filter.Validate();
  Require(overlap_min_region_fraction >= 0.0 && overlap_min_region_fraction <= 1.0,
          "overlap.min_region_fraction must lie in [0, 1]");
  clean.Validate();
  Require(yaw.angle_step > 0.0 && yaw.angle_step <= std::numbers::pi / 2,
          "yaw.step_deg must lie in (0, 90]");
  Require(yaw.trim_fraction >= 0.0 && yaw.trim_fraction < 0.5, "yaw.trim must lie in [0, 0.5)");
  Require(retrieval.voxel > 0.0, "retrieval.voxel must be positive");
  Require(retrieval.k >= 1, "retrieval.k must be at least 1");
  Require(limits.max_steps >= 1, "limits.max_steps must be at least 1");
  Require(limits.coding_rounds >= 1, "limits.coding_rounds must be at least 1");
  Require(limits.client_retries >= 0, "limits.client_retries must be non-negative");
  Require(limits.backoff_ms >= 0, "limits.backoff_ms must be non-negative");
  Require(limits.executor_timeout_s > 0.0, "limits.executor_timeout_s must be positive");
  Require(!limits.interpreter.empty(), "limits.interpreter must not be empty");
  Require(browse.sample_count >= 1, "browse.sample_count must be at least 1");
}

json EngineConfig::ToJson() const {
  return {
      {"association",
       {{"tau", association.tau},
        {"voxel", association.voxel},
        {"min_support", association.min_support},
        {"bev_iou", association.bev_iou},
        {"lift_source", association.lift_source == LiftSource::kDepth ? "depth" : "pointmap"}}},
      {"filter",
       {{"min_confidence", filter.min_confidence},
        {"min_area_fraction", filter.min_area_fraction},
        {"margin_fraction", filter.margin_fraction},
        {"max_margin_coverage", filter.max_margin_coverage},
        {"dup_iou", filter.dup_iou},
        {"mirror_overlap", filter.mirror_overlap}}},
      {"overlap", {{"min_region_fraction", overlap_min_region_fraction}}},
      {"clean",
       {{"subsample_voxel", clean.subsample_voxel},
        {"outlier_k", clean.outlier_k},
        {"outlier_std_ratio", clean.outlier_std_ratio},
        {"cluster_cell", clean.cluster_cell},
        {"min_points", clean.min_points}}},
      {"yaw", {{"step_deg", yaw.angle_step * kDegPerRad}, {"trim", yaw.trim_fraction}}},
      {"retrieval",
       {{"voxel", retrieval.voxel},
        {"k", retrieval.k},
        {"scoring", retrieval.scoring == FrameScoring::kMaskArea ? "mask_area" : "volumetric"}}},
      {"limits",
       {{"max_steps", limits.max_steps},
        {"coding_rounds", limits.coding_rounds},
        {"client_retries", limits.client_retries},
        {"backoff_ms", limits.backoff_ms},
        {"executor_timeout_s", limits.executor_timeout_s},
        {"interpreter", limits.interpreter}}},
      {"browse", {{"sample_count", browse.sample_count}}},
      {"mode", mode == OrchestrationMode::kToolUse ? "tool_use" : "multi_agent"},
  };
}

EngineConfig EngineConfig::FromJson(const json& j) {
  if (!j.is_object()) throw InvalidArgumentError("config must be a JSON object");
  static const std::set<std::string> kSections = {"association", "filter", "overlap", "clean",
                                                  "yaw", "retrieval", "limits", "browse", "mode"};
  for (auto& [key, _] : j.items()) {
    if (!kSections.count(key)) throw InvalidArgumentError("config: unknown section \"" + key + "\"");
  }
  EngineConfig c;

  Section a(j, "association");
  a.Read("tau", &c.association.tau);
  a.Read("voxel", &c.association.voxel);
  a.Read("min_support", &c.association.min_support);
  a.Read("bev_iou", &c.association.bev_iou);
  std::string lift = c.association.lift_source == LiftSource::kDepth ? "depth" : "pointmap";
  a.Read("lift_source", &lift);
  if (lift != "depth" && lift != "pointmap") {
    throw InvalidArgumentError("config.association.lift_source must be \"pointmap\" or \"depth\"");
  }
  c.association.lift_source = lift == "depth" ? LiftSource::kDepth : LiftSource::kPointMap;
  a.Finish();

  Section f(j, "filter");
  f.Read("min_confidence", &c.filter.min_confidence);
  f.Read("min_area_fraction", &c.filter.min_area_fraction);
  f.Read("margin_fraction", &c.filter.margin_fraction);
  f.Read("max_margin_coverage", &c.filter.max_margin_coverage);
  f.Read("dup_iou", &c.filter.dup_iou);
  f.Read("mirror_overlap", &c.filter.mirror_overlap);
  f.Finish();

  Section o(j, "overlap");
  o.Read("min_region_fraction", &c.overlap_min_region_fraction);
  o.Finish();

  Section cl(j, "clean");
  cl.Read("subsample_voxel", &c.clean.subsample_voxel);
  cl.Read("outlier_k", &c.clean.outlier_k);
  cl.Read("outlier_std_ratio", &c.clean.outlier_std_ratio);
  cl.Read("cluster_cell", &c.clean.cluster_cell);
  cl.Read("min_points", &c.clean.min_points);
  cl.Finish();

  Section y(j, "yaw");
  double step_deg = c.yaw.angle_step * kDegPerRad;
  y.Read("step_deg", &step_deg);
  c.yaw.angle_step = step_deg / kDegPerRad;
  y.Read("trim", &c.yaw.trim_fraction);
  y.Finish();

  Section r(j, "retrieval");
  r.Read("voxel", &c.retrieval.voxel);
  r.Read("k", &c.retrieval.k);
  std::string scoring = "volumetric";
  r.Read("scoring", &scoring);
  if (scoring != "volumetric" && scoring != "mask_area") {
    throw InvalidArgumentError("config.retrieval.scoring must be \"volumetric\" or \"mask_area\"");
  }
  c.retrieval.scoring = scoring == "mask_area" ? FrameScoring::kMaskArea : FrameScoring::kVolumetric;
  r.Finish();

  Section l(j, "limits");
  l.Read("max_steps", &c.limits.max_steps);
  l.Read("coding_rounds", &c.limits.coding_rounds);
  l.Read("client_retries", &c.limits.client_retries);
  l.Read("backoff_ms", &c.limits.backoff_ms);
  l.Read("executor_timeout_s", &c.limits.executor_timeout_s);
  l.Read("interpreter", &c.limits.interpreter);
  l.Finish();

  Section b(j, "browse");
  b.Read("sample_count", &c.browse.sample_count);
  b.Finish();

  if (j.contains("mode")) {
    const json& m = j["mode"];
    if (m == "tool_use") {
      c.mode = OrchestrationMode::kToolUse;
    } else if (m != "multi_agent") {
      throw InvalidArgumentError("config.mode must be \"multi_agent\" or \"tool_use\"");
    }
  }
  c.Validate();
  return c;
}

EngineConfig EngineConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgumentError("config file " + path + ": " + e.what());
  }
  return FromJson(j);
}

}  // namespace groundmem
