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

#include "groundmem/agents/scene_memory.h"

#include "groundmem/error.h"

namespace groundmem {
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json VecJson(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 VecFrom(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw InvalidArgumentError(std::string(what) + " must be a 3-vector");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ordered_json BoxJson(const YawBox& box) {
  ordered_json j;
  j["center"] = VecJson(box.center);
  j["size"] = VecJson(box.size);
  j["yaw"] = box.yaw;
  return j;
}

ordered_json EgoJson(const std::optional<EgoPose>& ego) {
  if (!ego) return nullptr;
  ordered_json j;
  j["position"] = VecJson(ego->position);
  j["facing"] = VecJson(ego->facing);
  return j;
}

}  // namespace

json EgoPose::ToJson() const { return {{"position", VecJson(position)}, {"facing", VecJson(facing)}}; }

EgoPose EgoPose::FromJson(const json& j) {
  EgoPose e;
  e.position = VecFrom(j.at("position"), "ego position");
  e.facing = VecFrom(j.at("facing"), "ego facing");
  if (e.facing.head<2>().norm() == 0.0) {
    throw InvalidArgumentError("ego facing has no horizontal component");
  }
  return e;
}

const MemoryInstance* SceneMemoryStore::FindInstance(int id) const {
  if (id < 0 || id >= static_cast<int>(instances_.size())) return nullptr;
  return &instances_[static_cast<size_t>(id)];
}

bool SceneMemoryStore::HasLabel(const std::string& label) const {
  for (const MemoryInstance& m : instances_) {
    if (m.record.label == label) return true;
  }
  return false;
}

void SceneMemoryStore::AddInstance(InstanceRecord record, int step, std::string prompt) {
  if (record.id != next_instance_id()) {
    throw InvalidArgumentError("instance id " + std::to_string(record.id) + " is not the next id " +
                               std::to_string(next_instance_id()));
  }
  instances_.push_back({std::move(record), step, std::move(prompt)});
}

void SceneMemoryStore::PutViewCache(ViewCache cache, int step) {
  std::string key = cache.key;
  view_caches_[key] = {std::move(cache), step};
}

void SceneMemoryStore::PutMeasurement(const std::string& name, Measurement m) {
  auto it = measurements_.find(name);
  if (it != measurements_.end() && it->second.step == m.step) {
    throw InvalidArgumentError("measurement '" + name + "' written twice in step " +
                               std::to_string(m.step));
  }
  measurements_[name] = std::move(m);
}

void SceneMemoryStore::AddNote(int step, std::string agent, std::string text) {
  notes_.push_back({step, std::move(agent), std::move(text)});
}

ordered_json SceneMemoryStore::Dump() const {
  ordered_json j;
  j["instances"] = ordered_json::array();
  for (const MemoryInstance& m : instances_) {
    ordered_json e;
    e["id"] = m.record.id;
    e["label"] = m.record.label;
    e["box"] = BoxJson(m.record.box);
    e["num_points"] = m.record.num_points;
    e["frames"] = m.record.frames;
    e["step"] = m.step;
    e["prompt"] = m.prompt;
    j["instances"].push_back(std::move(e));
  }
  j["view_caches"] = ordered_json::object();
  for (const auto& [key, c] : view_caches_) {
    ordered_json e = ordered_json::parse(c.cache.ToJson().dump());
    e["step"] = c.step;
    j["view_caches"][key] = std::move(e);
  }
  j["measurements"] = ordered_json::object();
  for (const auto& [name, m] : measurements_) {
    ordered_json e;
    e["value"] = m.value;
    e["ok"] = m.ok;
    if (!m.error.empty()) e["error"] = m.error;
    e["step"] = m.step;
    j["measurements"][name] = std::move(e);
  }
  j["notes"] = ordered_json::array();
  for (const Note& n : notes_) {
    ordered_json e;
    e["step"] = n.step;
    e["agent"] = n.agent;
    e["text"] = n.text;
    j["notes"].push_back(std::move(e));
  }
  j["ego"] = EgoJson(ego_);
  return j;
}

ordered_json MemoryViewJson(const SceneMemoryStore& memory) {
  ordered_json j;
  j["instances"] = ordered_json::array();
  for (const MemoryInstance& m : memory.instances()) {
    ordered_json e;
    e["id"] = m.record.id;
    e["label"] = m.record.label;
    e["box"] = BoxJson(m.record.box);
    j["instances"].push_back(std::move(e));
  }
  j["measurements"] = ordered_json::object();
  for (const auto& [name, m] : memory.measurements()) {
    j["measurements"][name] = m.ok ? ordered_json(m.value) : ordered_json(nullptr);
  }
  j["ego"] = EgoJson(memory.ego());
  return j;
}

std::string SerializeMemoryView(const SceneMemoryStore& memory) {
  return MemoryViewJson(memory).dump();
}

}  // namespace groundmem
