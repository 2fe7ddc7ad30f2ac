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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundmem/agents/executor.h"
#include "groundmem/agents/model_client.h"
#include "groundmem/agents/scene_memory.h"
#include "groundmem/config.h"
#include "groundmem/io/bundle.h"
#include "groundmem/mask/segmenter.h"
#include "groundmem/memory/visual_memory.h"

namespace groundmem {

// What the dispatchers need from the session. Pointers are non-owning.
struct AgentContext {
  const SceneBundle* bundle = nullptr;
  const EngineConfig* config = nullptr;
  const ClientSet* clients = nullptr;
  ProgramExecutor* executor = nullptr;
  Segmenter* segmenter = nullptr;
  VisualMemory* visual = nullptr;
  // Role used for browsing; the planner itself in tool-use mode.
  std::string browse_role = "grounder";
};

// min(n, m) frame positions spread evenly over [0, n): floor(j * n / m).
std::vector<int> SampleUniform(int n, int m);

// Lowercased, deduplicated labels from a comma/newline list or a JSON
// array of strings. nullopt when the reply does not look like a label list.
std::optional<std::vector<std::string>> ParseLabelList(const std::string& reply);

struct BrowseResult {
  std::vector<std::string> labels;
  std::vector<int> frames;  // frame indices shown to the model
  int attempts = 0;

  nlohmann::json ToJson() const;
};

// Shows uniformly sampled frames to the client and asks for candidate
// labels. An unparseable reply is retried once, then yields no labels.
BrowseResult BrowseScene(const SceneBundle& bundle, int sample_count, ModelClient& client,
                         const std::string& query);

struct GroundingRequest {
  std::string prompt;
  bool vague = false;

  static GroundingRequest FromPayload(const nlohmann::json& payload);
};

struct GroundingDispatch {
  std::vector<std::string> labels;
  std::optional<BrowseResult> browse;
  std::vector<int> instance_ids;  // new and previously grounded, ascending
  int created = 0;

  nlohmann::json ToJson(const SceneMemoryStore& memory) const;
};

// Clear mode grounds the comma-separated labels of the prompt; vague mode
// asks BrowseScene for labels first. Labels already in memory are not
// grounded again. New instances get global ids continuing the store's.
GroundingDispatch DispatchGrounding(const GroundingRequest& request, AgentContext& ctx,
                                    SceneMemoryStore& memory, int step);

struct RetrievalRequest {
  std::optional<int> instance_id;
  std::optional<Vec3> anchor;
  std::optional<Vec3> direction;
  bool use_ego = false;  // anchor/direction from the memory's ego pose
  int k = 0;             // 0 selects the configured default

  static RetrievalRequest FromPayload(const nlohmann::json& payload);
};

// Scores views for an instance box or a front region, caches them in the
// visual memory and records the cache in `memory`.
ViewCache DispatchRetrieval(const RetrievalRequest& request, AgentContext& ctx,
                            SceneMemoryStore& memory, int step);

struct CodingRound {
  int t = 0;
  std::string reply;
  std::string code;  // empty when the reply held no program
  std::optional<ExecutionResult> result;

  nlohmann::ordered_json ToJson() const;
};

struct CodingOutcome {
  std::string name;
  Measurement measurement;
  std::vector<CodingRound> rounds;
  int executions = 0;

  nlohmann::ordered_json ToJson() const;
};

// Interprets program output: the whole of stdout as JSON, else its last
// line as JSON, else the trimmed text as a string.
nlohmann::json ParseProgramOutput(const std::string& stdout_text);

// Coder replies {"code": "...", "final": bool} or {"done": true}. Each
// program runs with {"memory": <view>, "question"} bound; its output goes
// back to the coder. The loop stops at a successful final program, at
// "done" after a successful run, or after `t_max` rounds, in which case a
// failed measurement is stored.
CodingOutcome DispatchCoding(const std::string& question, const std::string& name,
                             ModelClient& coder, ProgramExecutor& executor,
                             SceneMemoryStore& memory, int t_max, int step);

// Single program run for the tool-use mode.
CodingOutcome RunProgramTool(const std::string& program, const std::string& name,
                             ProgramExecutor& executor, SceneMemoryStore& memory, int step);

}  // namespace groundmem
