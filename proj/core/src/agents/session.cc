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

#include "groundmem/agents/session.h"

#include <memory>

#include "groundmem/error.h"

namespace groundmem {
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr char kPlannerSystem[] =
    "You are the planning agent of a 3D scene question answering system. Each turn, reply "
    "with exactly one JSON object {\"kind\": K, \"payload\": {...}, \"summary\": \"...\"} where "
    "K is one of:\n"
    "  plan      {\"subgoals\": [...]}\n"
    "  ground    {\"prompt\": \"chair\", \"mode\": \"clear\"|\"vague\"}\n"
    "  retrieve  {\"instance_id\": 0, \"k\": 4} or {\"anchor\": [x,y,z], \"direction\": [x,y,z]} "
    "or {\"ego\": true}\n"
    "  browse    {}\n"
    "  code      {\"question\": \"...\", \"name\": \"...\"}\n"
    "  answer    {\"text\": \"...\"}\n"
    "\"summary\" is your best answer so far. Results of each action come back as JSON.";

constexpr char kToolUseSystem[] =
    "You answer questions about a 3D scene by calling tools. Each turn, reply with exactly one "
    "JSON object {\"kind\": K, \"payload\": {...}, \"summary\": \"...\"} where K is one of:\n"
    "  ground    {\"prompt\": \"chair\", \"mode\": \"clear\"|\"vague\"}\n"
    "  retrieve  {\"instance_id\": 0, \"k\": 4} or {\"anchor\": [x,y,z], \"direction\": [x,y,z]} "
    "or {\"ego\": true}\n"
    "  browse    {}\n"
    "  code      {\"program\": \"python source\", \"name\": \"...\"}\n"
    "  answer    {\"text\": \"...\"}\n"
    "Programs may use MEMORY, instances(label), box_distance(a, b), box_size(x), "
    "direction(target), count(label) and emit(value).";

constexpr char kEnvelopeReprompt[] =
    "Your reply was not a valid action. Reply with exactly one JSON object "
    "{\"kind\": ..., \"payload\": {...}} and nothing else.";

std::string MemoryDigest(const SceneMemoryStore& memory, int steps) {
  return "No answer within " + std::to_string(steps) +
         " steps. Scene memory: " + SerializeMemoryView(memory);
}

class Session {
 public:
  Session(const std::string& query, const SceneBundle& bundle, const ClientSet& clients,
          ProgramExecutor& executor, const EngineConfig& config, const SessionOptions& options)
      : query_(query), config_(config), clients_(clients) {
    if (config.limits.max_steps < 1) throw InvalidArgumentError("max_steps must be >= 1");
    if (!clients.Has("planner")) throw InvalidArgumentError("no planner client configured");
    tool_use_ = config.mode == OrchestrationMode::kToolUse;
    if (!options.visual) {
      owned_visual_ = std::make_unique<VisualMemory>(bundle);
    }
    ctx_.bundle = &bundle;
    ctx_.config = &config;
    ctx_.clients = &clients;
    ctx_.executor = &executor;
    ctx_.segmenter = options.segmenter;
    ctx_.visual = options.visual ? options.visual : owned_visual_.get();
    ctx_.browse_role = tool_use_ ? "planner" : "grounder";
    if (options.ego) result_.memory.SetEgo(*options.ego);
    result_.memory.AddNote(0, "planner", "query: " + query);
  }

  SessionResult Run() {
    std::string first = "Question: " + query_ + "\nScene memory: " +
                        SerializeMemoryView(result_.memory);
    request_ = {"planner", tool_use_ ? kToolUseSystem : kPlannerSystem, {{"user", first, {}}}};
    std::string summary;
    for (int step = 1; step <= config_.limits.max_steps; ++step) {
      const PlannerEnvelope env = NextEnvelope(step);
      if (!env.summary.empty()) summary = env.summary;
      AgentAction action;
      action.step = step;
      action.kind = env.kind;
      action.payload = env.payload;
      std::vector<std::string> images;
      action.result = Dispatch(env, step, &images);
      result_.trace.push_back(action);
      if (env.kind == ActionKind::kAnswer) {
        result_.answer = env.payload.value("text", "");
        return std::move(result_);
      }
      request_.messages.push_back(
          {"user",
           "Step " + std::to_string(step) + " result: " + action.result.dump() +
               "\nScene memory: " + SerializeMemoryView(result_.memory),
           std::move(images)});
    }
    result_.budget_exhausted = true;
    result_.answer = summary.empty() ? MemoryDigest(result_.memory, config_.limits.max_steps)
                                     : summary;
    result_.memory.AddNote(config_.limits.max_steps, "planner", "budget exhausted");
    return std::move(result_);
  }

  [[noreturn]] void Fail(const std::string& what) {
    throw SessionFailure(what, std::move(result_));
  }

 private:
  std::string Complete(const std::string& role, const ChatRequest& request) {
    try {
      return clients_.For(role).Complete(request);
    } catch (const ClientError& e) {
      Fail(std::string(e.what()));
    }
  }

  PlannerEnvelope NextEnvelope(int step) {
    for (int attempt = 0; attempt < 2; ++attempt) {
      const std::string reply = Complete("planner", request_);
      request_.messages.push_back({"assistant", reply, {}});
      if (auto env = ParseEnvelope(reply)) return *env;
      request_.messages.push_back({"user", kEnvelopeReprompt, {}});
    }
    Fail("planner replied without a valid action envelope twice at step " +
         std::to_string(step));
  }

  json Dispatch(const PlannerEnvelope& env, int step, std::vector<std::string>* images) {
    SceneMemoryStore& memory = result_.memory;
    try {
      switch (env.kind) {
        case ActionKind::kPlan:
          memory.AddNote(step, "planner", "plan: " + env.payload.dump());
          return {{"ok", true}};
        case ActionKind::kGround: {
          const GroundingRequest req = GroundingRequest::FromPayload(env.payload);
          return DispatchGrounding(req, ctx_, memory, step).ToJson(memory);
        }
        case ActionKind::kRetrieve: {
          const ViewCache cache =
              DispatchRetrieval(RetrievalRequest::FromPayload(env.payload), ctx_, memory, step);
          for (const RankedFrame& f : cache.frames) images->push_back(f.rgb_path);
          return cache.ToJson();
        }
        case ActionKind::kBrowse: {
          const BrowseResult b =
              BrowseScene(*ctx_.bundle, config_.browse.sample_count,
                          clients_.For(ctx_.browse_role), env.payload.value("query", query_));
          memory.AddNote(step, ctx_.browse_role, "browse: " + json(b.labels).dump());
          return b.ToJson();
        }
        case ActionKind::kCode: {
          const std::string name = env.payload.value("name", "m" + std::to_string(step));
          if (tool_use_) {
            const std::string program = env.payload.value("program", "");
            if (program.empty()) throw InvalidArgumentError("code payload needs a \"program\"");
            return json::parse(
                RunProgramTool(program, name, *ctx_.executor, memory, step).ToJson().dump());
          }
          const std::string question = env.payload.value("question", "");
          if (question.empty()) throw InvalidArgumentError("code payload needs a \"question\"");
          const CodingOutcome out =
              DispatchCoding(question, name, clients_.For("coder"), *ctx_.executor, memory,
                             config_.limits.coding_rounds, step);
          return json::parse(out.ToJson().dump());
        }
        case ActionKind::kAnswer:
          memory.AddNote(step, "planner", "answer: " + env.payload.value("text", ""));
          return json::object();
      }
    } catch (const ClientError& e) {
      Fail(e.what());
    } catch (const SessionError& e) {
      Fail(e.what());
    } catch (const Error& e) {
      // Bad payloads and empty results go back to the planner, which may
      // re-plan or retry.
      memory.AddNote(step, "planner", std::string("error: ") + e.what());
      return {{"error", e.what()}};
    } catch (const json::exception& e) {
      memory.AddNote(step, "planner", std::string("error: ") + e.what());
      return {{"error", e.what()}};
    }
    return json::object();
  }

  std::string query_;
  const EngineConfig& config_;
  const ClientSet& clients_;
  bool tool_use_ = false;
  std::unique_ptr<VisualMemory> owned_visual_;
  AgentContext ctx_;
  ChatRequest request_;
  SessionResult result_;
};

}  // namespace

ordered_json SessionResult::Summary() const {
  ordered_json j;
  j["answer"] = answer;
  j["budget_exhausted"] = budget_exhausted;
  j["steps"] = trace.size();
  return j;
}

SessionResult RunSession(const std::string& query, const SceneBundle& bundle,
                         const ClientSet& clients, ProgramExecutor& executor,
                         const EngineConfig& config, const SessionOptions& options) {
  Session session(query, bundle, clients, executor, config, options);
  return session.Run();
}

}  // namespace groundmem
