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

#include "groundmem/agents/trace.h"

#include <array>
#include <utility>

namespace groundmem {
namespace {

constexpr std::array<std::pair<ActionKind, const char*>, 6> kNames = {{
    {ActionKind::kPlan, "plan"},
    {ActionKind::kGround, "ground"},
    {ActionKind::kRetrieve, "retrieve"},
    {ActionKind::kBrowse, "browse"},
    {ActionKind::kCode, "code"},
    {ActionKind::kAnswer, "answer"},
}};

std::string Trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

const char* ActionKindName(ActionKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<ActionKind> ParseActionKind(const std::string& name) {
  for (const auto& [k, n] : kNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

nlohmann::ordered_json AgentAction::ToJson() const {
  nlohmann::ordered_json j;
  j["step"] = step;
  j["kind"] = ActionKindName(kind);
  j["payload"] = payload;
  j["result"] = result;
  return j;
}

std::string StripFence(const std::string& text) {
  std::string t = Trim(text);
  if (t.size() < 6 || t.compare(0, 3, "```") != 0 || t.compare(t.size() - 3, 3, "```") != 0) {
    return t;
  }
  const size_t first_nl = t.find('\n');
  if (first_nl == std::string::npos || first_nl >= t.size() - 3) return t;
  return Trim(t.substr(first_nl + 1, t.size() - 3 - first_nl - 1));
}

std::optional<PlannerEnvelope> ParseEnvelope(const std::string& reply) {
  const nlohmann::json j = nlohmann::json::parse(StripFence(reply), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  auto kind_it = j.find("kind");
  if (kind_it == j.end() || !kind_it->is_string()) return std::nullopt;
  auto kind = ParseActionKind(kind_it->get<std::string>());
  if (!kind) return std::nullopt;
  PlannerEnvelope env;
  env.kind = *kind;
  if (auto p = j.find("payload"); p != j.end() && !p->is_null()) {
    if (!p->is_object()) return std::nullopt;
    env.payload = *p;
  }
  if (auto s = j.find("summary"); s != j.end() && s->is_string()) env.summary = s->get<std::string>();
  return env;
}

void WriteTrace(std::span<const AgentAction> trace, std::ostream& out) {
  for (const AgentAction& a : trace) out << a.ToJson().dump() << '\n';
}

}  // namespace groundmem
