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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundmem/io/instance_io.h"
#include "groundmem/memory/visual_memory.h"
#include "groundmem/types.h"

namespace groundmem {

struct EgoPose {
  Vec3 position = Vec3::Zero();
  Vec3 facing = Vec3::UnitX();

  nlohmann::json ToJson() const;
  static EgoPose FromJson(const nlohmann::json& j);
};

// Every stored item remembers the trace step that produced it.
struct MemoryInstance {
  InstanceRecord record;
  int step = 0;
  std::string prompt;
};

struct MemoryViewCache {
  ViewCache cache;
  int step = 0;
};

struct Measurement {
  nlohmann::json value;  // null on failure
  bool ok = true;
  std::string error;
  int step = 0;
};

struct Note {
  int step = 0;
  std::string agent;
  std::string text;
};

// The shared scene memory agents read and write. Notes are append-only.
class SceneMemoryStore {
 public:
  const std::vector<MemoryInstance>& instances() const { return instances_; }
  const std::map<std::string, MemoryViewCache>& view_caches() const { return view_caches_; }
  const std::map<std::string, Measurement>& measurements() const { return measurements_; }
  const std::vector<Note>& notes() const { return notes_; }
  const std::optional<EgoPose>& ego() const { return ego_; }

  // Next free global instance id.
  int next_instance_id() const { return static_cast<int>(instances_.size()); }
  const MemoryInstance* FindInstance(int id) const;
  bool HasLabel(const std::string& label) const;

  // Requires record.id == next_instance_id().
  void AddInstance(InstanceRecord record, int step, std::string prompt);
  void PutViewCache(ViewCache cache, int step);
  // A name may be written once per step; a later step replaces the value.
  void PutMeasurement(const std::string& name, Measurement m);
  void AddNote(int step, std::string agent, std::string text);
  void SetEgo(EgoPose ego) { ego_ = ego; }

  // Full dump including provenance, caches and notes.
  nlohmann::ordered_json Dump() const;

 private:
  std::vector<MemoryInstance> instances_;
  std::map<std::string, MemoryViewCache> view_caches_;
  std::map<std::string, Measurement> measurements_;
  std::vector<Note> notes_;
  std::optional<EgoPose> ego_;
};

// The view handed to models and programs:
//   {"instances": [{"id", "label", "box"}], "measurements": {...}, "ego": ...}
// Failed measurements render as null. Key order is fixed.
nlohmann::ordered_json MemoryViewJson(const SceneMemoryStore& memory);
std::string SerializeMemoryView(const SceneMemoryStore& memory);

}  // namespace groundmem
