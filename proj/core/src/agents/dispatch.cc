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

#include "groundmem/agents/dispatch.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "groundmem/agents/trace.h"
#include "groundmem/error.h"
#include "groundmem/lift/grounding_pipeline.h"

namespace groundmem {
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr char kBrowseSystem[] =
    "You look at frames of an indoor scene and name the object categories that may match a "
    "query. Reply with a comma-separated list of short lowercase labels and nothing else.";

constexpr char kBrowseReprompt[] =
    "Reply only with a comma-separated list of object labels, for example: chair, table";

constexpr char kCoderSystem[] =
    "You write Python 3 programs that answer geometric questions about a scene. The program "
    "runs with helpers already defined: MEMORY, INSTANCES, EGO, instances(label), "
    "instance(id), box_center(x), box_size(x), box_volume(x), box_distance(a, b), "
    "direction(target, ego=None) -> front|behind|left|right, count(label), emit(value). "
    "Boxes are {center, size: [l, w, h], yaw} in meters and radians. Print the result with "
    "emit(). Reply with one JSON object {\"code\": \"...\", \"final\": true|false}, or "
    "{\"done\": true} to accept the previous output.";

std::string Trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Drops list decorations: bullets, numbering, quotes, trailing periods.
std::string CleanLabel(std::string s) {
  s = Trim(s);
  while (!s.empty() && (s[0] == '-' || s[0] == '*' || s[0] == '\xe2')) {
    // U+2022 bullet is three bytes
    s = Trim(s.substr(s[0] == '\xe2' && s.size() >= 3 ? 3 : 1));
  }
  size_t digits = 0;
  while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
  if (digits > 0 && digits < s.size() && (s[digits] == '.' || s[digits] == ')')) {
    s = Trim(s.substr(digits + 1));
  }
  while (!s.empty() && (s.back() == '.' || s.back() == ';')) s.pop_back();
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return Lower(Trim(s));
}

bool PlausibleLabel(const std::string& s) {
  if (s.empty() || s.size() > 64) return false;
  int words = 1;
  for (char c : s) {
    if (c == ' ') ++words;
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == ' ' || c == '-' ||
                    c == '_' || c == '\'' || c == '/';
    if (!ok) return false;
  }
  return words <= 5;
}

std::vector<std::string> SplitLabels(const std::string& prompt) {
  std::vector<std::string> out;
  std::stringstream ss(prompt);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string l = Lower(Trim(item));
    if (!l.empty() && std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  return out;
}

std::optional<Vec3> VecField(const json& payload, const char* key) {
  auto it = payload.find(key);
  if (it == payload.end() || it->is_null()) return std::nullopt;
  if (!it->is_array() || it->size() != 3) {
    throw InvalidArgumentError(std::string(key) + " must be a 3-vector");
  }
  return Vec3((*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>());
}

std::string FeedbackText(const CodingRound& r) {
  if (!r.result) return "Round " + std::to_string(r.t) + ": the reply contained no program.";
  std::string text = "Round " + std::to_string(r.t) + " exit status " +
                     std::to_string(r.result->exit_status) +
                     (r.result->timed_out ? " (timed out)" : "") + "\nstdout:\n" +
                     r.result->stdout_text + "\nstderr:\n" + r.result->stderr_text;
  return text;
}

struct CoderReply {
  bool done = false;
  bool final = false;
  std::string code;
};

CoderReply ParseCoderReply(const std::string& reply) {
  CoderReply r;
  const std::string body = StripFence(reply);
  const json j = json::parse(body, nullptr, false);
  if (!j.is_discarded() && j.is_object()) {
    if (j.value("done", false)) {
      r.done = true;
      return r;
    }
    if (auto c = j.find("code"); c != j.end() && c->is_string()) {
      r.code = c->get<std::string>();
      r.final = j.value("final", false);
      return r;
    }
    return r;
  }
  // A bare program, fenced or not.
  r.code = body;
  return r;
}

}  // namespace

std::vector<int> SampleUniform(int n, int m) {
  if (n < 0 || m < 1) throw InvalidArgumentError("sampling needs n >= 0 and m >= 1");
  std::vector<int> out;
  const int count = std::min(n, m);
  for (int j = 0; j < count; ++j) {
    out.push_back(static_cast<int>(static_cast<int64_t>(j) * n / count));
  }
  return out;
}

std::optional<std::vector<std::string>> ParseLabelList(const std::string& reply) {
  std::vector<std::string> raw;
  const std::string body = StripFence(reply);
  const json j = json::parse(body, nullptr, false);
  if (!j.is_discarded() && (j.is_array() || j.is_object())) {
    const json* list = &j;
    if (j.is_object()) {
      auto it = j.find("labels");
      if (it == j.end()) return std::nullopt;
      list = &*it;
    }
    if (!list->is_array()) return std::nullopt;
    for (const json& e : *list) {
      if (!e.is_string()) return std::nullopt;
      raw.push_back(e.get<std::string>());
    }
  } else {
    std::string item;
    for (char c : body) {
      if (c == ',' || c == '\n') {
        raw.push_back(item);
        item.clear();
      } else {
        item += c;
      }
    }
    raw.push_back(item);
  }
  std::vector<std::string> labels;
  for (const std::string& r : raw) {
    std::string l = CleanLabel(r);
    if (l.empty()) continue;
    if (!PlausibleLabel(l)) return std::nullopt;
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
  }
  if (labels.empty() && !(j.is_array() && j.empty())) return std::nullopt;
  return labels;
}

json BrowseResult::ToJson() const {
  return {{"labels", labels}, {"frames", frames}, {"attempts", attempts}};
}

BrowseResult BrowseScene(const SceneBundle& bundle, int sample_count, ModelClient& client,
                         const std::string& query) {
  if (bundle.frames.empty()) throw InvalidArgumentError("browsing needs at least one frame");
  BrowseResult result;
  ChatMessage message;
  message.role = "user";
  message.text = "Query: " + query + "\nWhich object categories in these frames could it refer to?";
  for (int pos : SampleUniform(static_cast<int>(bundle.frames.size()), sample_count)) {
    const FrameRecord& f = bundle.frames[static_cast<size_t>(pos)];
    result.frames.push_back(f.frame_index);
    message.image_refs.push_back(f.rgb_path);
  }
  ChatRequest request{"grounder", kBrowseSystem, {message}};
  for (int attempt = 0; attempt < 2; ++attempt) {
    ++result.attempts;
    const std::string reply = client.Complete(request);
    if (auto labels = ParseLabelList(reply)) {
      result.labels = std::move(*labels);
      return result;
    }
    request.messages.push_back({"assistant", reply, {}});
    request.messages.push_back({"user", kBrowseReprompt, {}});
  }
  return result;
}

GroundingRequest GroundingRequest::FromPayload(const json& payload) {
  GroundingRequest r;
  auto p = payload.find("prompt");
  if (p == payload.end() || !p->is_string() || Trim(p->get<std::string>()).empty()) {
    throw InvalidArgumentError("ground payload needs a non-empty \"prompt\"");
  }
  r.prompt = p->get<std::string>();
  const std::string mode = payload.value("mode", "clear");
  if (mode != "clear" && mode != "vague") {
    throw InvalidArgumentError("ground mode must be \"clear\" or \"vague\"");
  }
  r.vague = mode == "vague";
  return r;
}

json GroundingDispatch::ToJson(const SceneMemoryStore& memory) const {
  const json view = json::parse(SerializeMemoryView(memory));
  json instances = json::array();
  for (int id : instance_ids) instances.push_back(view["instances"][size_t(id)]);
  json j = {{"labels", labels},
            {"instances", std::move(instances)},
            {"created", created},
            {"status", instance_ids.empty() ? "empty" : "ok"}};
  if (browse) j["browse"] = browse->ToJson();
  return j;
}

GroundingDispatch DispatchGrounding(const GroundingRequest& request, AgentContext& ctx,
                                    SceneMemoryStore& memory, int step) {
  GroundingDispatch out;
  if (request.vague) {
    out.browse = BrowseScene(*ctx.bundle, ctx.config->browse.sample_count,
                             ctx.clients->For(ctx.browse_role), request.prompt);
    out.labels = out.browse->labels;
  } else {
    out.labels = SplitLabels(request.prompt);
  }

  std::vector<std::string> fresh;
  for (const std::string& l : out.labels) {
    if (!memory.HasLabel(l)) fresh.push_back(l);
  }
  if (!fresh.empty()) {
    GroundingOptions options;
    options.labels = fresh;
    options.segmenter = ctx.segmenter;
    GroundingResult g = RunGrounding(*ctx.bundle, options, *ctx.config);
    for (const Instance& inst : g.instances) {
      InstanceRecord rec = InstanceRecord::From(inst);
      rec.id = memory.next_instance_id();
      memory.AddInstance(std::move(rec), step, request.prompt);
      ++out.created;
    }
  }
  for (const MemoryInstance& m : memory.instances()) {
    if (std::find(out.labels.begin(), out.labels.end(), m.record.label) != out.labels.end()) {
      out.instance_ids.push_back(m.record.id);
    }
  }

  std::string note = "ground '" + request.prompt + "' (" + (request.vague ? "vague" : "clear") +
                     "): ";
  if (out.labels.empty()) {
    note += "no candidate labels";
  } else if (out.instance_ids.empty()) {
    note += "no instances found";
  } else {
    note += std::to_string(out.instance_ids.size()) + " instance(s), " +
            std::to_string(out.created) + " new";
  }
  memory.AddNote(step, "grounder", note);
  return out;
}

RetrievalRequest RetrievalRequest::FromPayload(const json& payload) {
  RetrievalRequest r;
  if (auto it = payload.find("instance_id"); it != payload.end() && !it->is_null()) {
    r.instance_id = it->get<int>();
  }
  r.anchor = VecField(payload, "anchor");
  r.direction = VecField(payload, "direction");
  r.use_ego = payload.value("ego", false);
  r.k = payload.value("k", 0);
  if (r.k < 0) throw InvalidArgumentError("k must be >= 1");
  const int forms = int(r.instance_id.has_value()) + int(r.anchor || r.direction) + int(r.use_ego);
  if (forms != 1) {
    throw InvalidArgumentError(
        "retrieve payload needs exactly one of instance_id, anchor+direction, ego");
  }
  if ((r.anchor.has_value()) != (r.direction.has_value())) {
    throw InvalidArgumentError("anchor and direction go together");
  }
  return r;
}

ViewCache DispatchRetrieval(const RetrievalRequest& request, AgentContext& ctx,
                            SceneMemoryStore& memory, int step) {
  const RetrievalConfig& cfg = ctx.config->retrieval;
  const int k = request.k > 0 ? request.k : cfg.k;
  ViewCache cache;
  if (request.instance_id) {
    const MemoryInstance* inst = memory.FindInstance(*request.instance_id);
    if (!inst) {
      throw InvalidArgumentError("unknown instance id " + std::to_string(*request.instance_id));
    }
    if (cfg.scoring == FrameScoring::kMaskArea) {
      cache = RetrieveByMaskArea(*ctx.bundle, inst->record.label, k);
      cache.key = "instance:" + std::to_string(inst->record.id);
    } else {
      cache = *ctx.visual->CacheInstanceViews(inst->record.id, inst->record.aabb, k, cfg.voxel);
    }
  } else {
    Vec3 anchor, direction;
    if (request.use_ego) {
      if (!memory.ego()) throw InvalidArgumentError("no ego pose in memory");
      anchor = memory.ego()->position;
      direction = memory.ego()->facing;
    } else {
      anchor = *request.anchor;
      direction = *request.direction;
    }
    const Region region = RegionFromDirection(anchor, direction);
    cache = *ctx.visual->CacheRegionViews("front:" + region.Describe(), region, k, cfg.voxel);
  }
  memory.PutViewCache(cache, step);
  memory.AddNote(step, "grounder",
                 "retrieve " + cache.key + ": " + std::to_string(cache.frames.size()) + " view(s)");
  return cache;
}

ordered_json CodingRound::ToJson() const {
  ordered_json j;
  j["t"] = t;
  j["code"] = code;
  if (result) {
    j["exit_status"] = result->exit_status;
    j["timed_out"] = result->timed_out;
    j["stdout"] = result->stdout_text;
    j["stderr"] = result->stderr_text;
  } else {
    j["exit_status"] = nullptr;
  }
  return j;
}

ordered_json CodingOutcome::ToJson() const {
  ordered_json j;
  j["name"] = name;
  j["ok"] = measurement.ok;
  j["value"] = measurement.value;
  if (!measurement.error.empty()) j["error"] = measurement.error;
  j["executions"] = executions;
  j["rounds"] = ordered_json::array();
  for (const CodingRound& r : rounds) j["rounds"].push_back(r.ToJson());
  return j;
}

json ParseProgramOutput(const std::string& stdout_text) {
  const std::string text = Trim(stdout_text);
  json j = json::parse(text, nullptr, false);
  if (!j.is_discarded()) return j;
  const size_t nl = text.find_last_of('\n');
  if (nl != std::string::npos) {
    j = json::parse(text.substr(nl + 1), nullptr, false);
    if (!j.is_discarded()) return j;
  }
  return text;
}

CodingOutcome DispatchCoding(const std::string& question, const std::string& name,
                             ModelClient& coder, ProgramExecutor& executor,
                             SceneMemoryStore& memory, int t_max, int step) {
  if (t_max < 1) throw InvalidArgumentError("coding rounds must be >= 1");
  CodingOutcome out;
  out.name = name;
  const std::string view = SerializeMemoryView(memory);
  const json bindings = {{"memory", json::parse(view)}, {"question", question}};
  ChatRequest request{"coder", kCoderSystem,
                      {{"user", "Question: " + question + "\nScene memory: " + view, {}}}};

  std::optional<ExecutionResult> last_ok;
  bool finished = false;
  for (int t = 1; t <= t_max && !finished; ++t) {
    CodingRound round;
    round.t = t;
    round.reply = coder.Complete(request);
    const CoderReply parsed = ParseCoderReply(round.reply);
    request.messages.push_back({"assistant", round.reply, {}});
    if (parsed.done) {
      out.rounds.push_back(std::move(round));
      if (last_ok) finished = true;
      else request.messages.push_back({"user", "No program has succeeded yet.", {}});
      continue;
    }
    round.code = parsed.code;
    if (!Trim(parsed.code).empty()) {
      round.result = executor.Run(parsed.code, bindings);
      ++out.executions;
    }
    request.messages.push_back({"user", FeedbackText(round), {}});
    out.rounds.push_back(std::move(round));
    const CodingRound& stored = out.rounds.back();
    if (stored.result && stored.result->ok()) {
      last_ok = stored.result;
      finished = parsed.final;
    }
  }

  out.measurement.step = step;
  if (finished) {
    out.measurement.value = ParseProgramOutput(last_ok->stdout_text);
    out.measurement.ok = true;
  } else {
    out.measurement.value = nullptr;
    out.measurement.ok = false;
    const CodingRound& last = out.rounds.back();
    out.measurement.error = "no accepted program after " + std::to_string(out.rounds.size()) +
                            " round(s)";
    if (last.result && !last.result->ok()) {
      out.measurement.error += "; last error: " + Trim(last.result->stderr_text);
    }
  }
  memory.PutMeasurement(name, out.measurement);
  memory.AddNote(step, "coder",
                 name + (out.measurement.ok ? " = " + out.measurement.value.dump()
                                            : " failed: " + out.measurement.error));
  return out;
}

CodingOutcome RunProgramTool(const std::string& program, const std::string& name,
                             ProgramExecutor& executor, SceneMemoryStore& memory, int step) {
  CodingOutcome out;
  out.name = name;
  const std::string view = SerializeMemoryView(memory);
  CodingRound round;
  round.t = 1;
  round.code = program;
  round.result = executor.Run(program, {{"memory", json::parse(view)}, {"question", ""}});
  out.executions = 1;
  out.measurement.step = step;
  out.measurement.ok = round.result->ok();
  if (out.measurement.ok) {
    out.measurement.value = ParseProgramOutput(round.result->stdout_text);
  } else {
    out.measurement.value = nullptr;
    out.measurement.error = Trim(round.result->stderr_text);
  }
  out.rounds.push_back(std::move(round));
  memory.PutMeasurement(name, out.measurement);
  memory.AddNote(step, "planner",
                 name + (out.measurement.ok ? " = " + out.measurement.value.dump()
                                            : " failed: " + out.measurement.error));
  return out;
}

}  // namespace groundmem
