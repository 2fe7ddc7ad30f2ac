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

#include "groundmem/agents/dispatch.h"
#include "groundmem/agents/executor.h"
#include "groundmem/agents/model_client.h"
#include "groundmem/agents/scene_memory.h"
#include "groundmem/agents/trace.h"
#include "groundmem/config.h"
#include "groundmem/io/bundle.h"

namespace groundmem {

struct SessionOptions {
  std::optional<EgoPose> ego;
  Segmenter* segmenter = nullptr;
  // Shared across sessions over the same bundle when set; otherwise the
  // session builds its own.
  VisualMemory* visual = nullptr;
};

struct SessionResult {
  std::string answer;
  bool budget_exhausted = false;
  SceneMemoryStore memory;
  std::vector<AgentAction> trace;

  // {"answer", "budget_exhausted", "steps"}
  nlohmann::ordered_json Summary() const;
};

// Session aborted by a client or protocol failure. Carries everything
// recorded up to that point.
class SessionFailure : public SessionError {
 public:
  SessionFailure(const std::string& what, SessionResult partial)
      : SessionError(what), partial_(std::move(partial)) {}
  const SessionResult& partial() const { return partial_; }

 private:
  SessionResult partial_;
};

// The planning loop. Each step asks the planner for one action envelope,
// dispatches it, records the action with its result and feeds the result
// back. A free-text reply is reprompted once. The session ends on "answer"
// or after config.limits.max_steps actions; in the latter case the answer
// is the planner's latest "summary" (or a digest of the memory) and
// budget_exhausted is set.
//
// Roles: "planner" always; "grounder" for browsing and "coder" for the
// coding loop in multi-agent mode. In tool-use mode the planner browses
// itself and "code" actions carry a program that runs once.
SessionResult RunSession(const std::string& query, const SceneBundle& bundle,
                         const ClientSet& clients, ProgramExecutor& executor,
                         const EngineConfig& config, const SessionOptions& options = {});

}  // namespace groundmem
