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
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundmem/geometry/box.h"
#include "groundmem/lift/instance.h"

namespace groundmem {

// The serialized view of an Instance:
//   {"id", "label", "box": {"center": [x,y,z], "size": [l,w,h], "yaw"},
//    "aabb": {"min": [...], "max": [...]}, "num_points", "frames": [...]}
struct InstanceRecord {
  int id = 0;
  std::string label;
  YawBox box;
  Aabb aabb;
  int64_t num_points = 0;
  std::vector<int> frames;

  static InstanceRecord From(const Instance& inst);
  nlohmann::json ToJson() const;
  static InstanceRecord FromJson(const nlohmann::json& j, const std::string& source);

  bool operator==(const InstanceRecord&) const = default;
};

nlohmann::json InstancesToJson(std::span<const InstanceRecord> records);

// Requires every instance to carry a box and ids to be 0..n-1 in order.
void WriteInstances(std::span<const Instance> instances, const std::filesystem::path& path);
void WriteInstanceRecords(std::span<const InstanceRecord> records,
                          const std::filesystem::path& path);
std::vector<InstanceRecord> ReadInstances(const std::filesystem::path& path);

}  // namespace groundmem
