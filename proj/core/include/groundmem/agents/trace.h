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

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace groundmem {

enum class ActionKind { kPlan, kGround, kRetrieve, kBrowse, kCode, kAnswer };

const char* ActionKindName(ActionKind kind);
std::optional<ActionKind> ParseActionKind(const std::string& name);

// One planner decision and what its dispatch produced.
struct AgentAction {
  int step = 0;
  ActionKind kind = ActionKind::kPlan;
  nlohmann::json payload = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();

  // {"step", "kind", "payload", "result"}
  nlohmann::ordered_json ToJson() const;
};

// The planner's reply format: {"kind", "payload"?, "summary"?}. A reply
// wrapped in a single ``` fence is accepted.
struct PlannerEnvelope {
  ActionKind kind = ActionKind::kPlan;
  nlohmann::json payload = nlohmann::json::object();
  std::string summary;
};

// nullopt for anything that is not such an object.
std::optional<PlannerEnvelope> ParseEnvelope(const std::string& reply);

// Strips one surrounding ``` fence (with optional language tag).
std::string StripFence(const std::string& text);

// JSONL, one action per line.
void WriteTrace(std::span<const AgentAction> trace, std::ostream& out);

}  // namespace groundmem
