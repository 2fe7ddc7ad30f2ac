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

#include "groundmem/io/instance_io.h"

#include <fstream>

#include "groundmem/error.h"

namespace groundmem {
using nlohmann::json;

namespace {

json VecJson(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 VecFrom(const json& j, const std::string& source, const std::string& field) {
  if (!j.is_array() || j.size() != 3) throw FormatError(source, field, "expected 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[size_t(i)].is_number()) throw FormatError(source, field, "expected 3 numbers");
    v[i] = j[size_t(i)].get<double>();
  }
  return v;
}

}  // namespace

InstanceRecord InstanceRecord::From(const Instance& inst) {
  if (!inst.box) {
    throw InvalidArgumentError("instance " + std::to_string(inst.id) + " has no fitted box");
  }
  InstanceRecord r;
  r.id = inst.id;
  r.label = inst.label;
  r.box = *inst.box;
  r.aabb = inst.aabb;
  r.num_points = static_cast<int64_t>(inst.points.size());
  r.frames.assign(inst.frames.begin(), inst.frames.end());
  return r;
}

json InstanceRecord::ToJson() const {
  return {{"id", id},
          {"label", label},
          {"box", {{"center", VecJson(box.center)}, {"size", VecJson(box.size)}, {"yaw", box.yaw}}},
          {"aabb", {{"min", VecJson(aabb.min)}, {"max", VecJson(aabb.max)}}},
          {"num_points", num_points},
          {"frames", frames}};
}

InstanceRecord InstanceRecord::FromJson(const json& j, const std::string& source) {
  try {
    InstanceRecord r;
    r.id = j.at("id").get<int>();
    r.label = j.at("label").get<std::string>();
    const json& box = j.at("box");
    r.box.center = VecFrom(box.at("center"), source, "box.center");
    r.box.size = VecFrom(box.at("size"), source, "box.size");
    r.box.yaw = box.at("yaw").get<double>();
    if (j.contains("aabb")) {
      r.aabb.min = VecFrom(j["aabb"].at("min"), source, "aabb.min");
      r.aabb.max = VecFrom(j["aabb"].at("max"), source, "aabb.max");
    } else {
      r.aabb = r.box.BoundingAabb();
    }
    r.num_points = j.at("num_points").get<int64_t>();
    r.frames = j.at("frames").get<std::vector<int>>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(source, "instances", e.what());
  }
}

json InstancesToJson(std::span<const InstanceRecord> records) {
  json list = json::array();
  for (const auto& r : records) list.push_back(r.ToJson());
  return json{{"instances", list}};
}

void WriteInstanceRecords(std::span<const InstanceRecord> records,
                          const std::filesystem::path& path) {
  for (size_t i = 0; i < records.size(); ++i) {
    if (records[i].id != int(i)) {
      throw InvalidArgumentError("instance ids must be contiguous from 0");
    }
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError(path.string(), "file", "cannot open for writing");
  out << InstancesToJson(records).dump(2) << "\n";
  if (!out) throw FormatError(path.string(), "file", "write failed");
}

void WriteInstances(std::span<const Instance> instances, const std::filesystem::path& path) {
  std::vector<InstanceRecord> records;
  records.reserve(instances.size());
  for (const Instance& inst : instances) records.push_back(InstanceRecord::From(inst));
  WriteInstanceRecords(records, path);
}

std::vector<InstanceRecord> ReadInstances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), "file", "missing or unreadable");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string(), "json", e.what());
  }
  if (!doc.is_object() || !doc.contains("instances") || !doc["instances"].is_array()) {
    throw FormatError(path.string(), "instances", "expected an \"instances\" array");
  }
  std::vector<InstanceRecord> out;
  for (const json& j : doc["instances"]) out.push_back(InstanceRecord::FromJson(j, path.string()));
  return out;
}

}  // namespace groundmem
