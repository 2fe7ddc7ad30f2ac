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

// groundmem: command-line entry point.
//
//   groundmem ground BUNDLE --labels chair,table [--out DIR]
//   groundmem retrieve BUNDLE --instance-id 0 -k 4
//   groundmem retrieve BUNDLE --anchor 0,0,0 --dir 1,0,0
//   groundmem eval judged.jsonl
//   groundmem orchestrate BUNDLE --query "..." --transcript t.jsonl
//   groundmem config init | config validate FILE
//
// Exit codes: 0 success, 2 usage, 3 data/format, 4 session/external.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "groundmem/agents/executor.h"
#include "groundmem/agents/model_client.h"
#include "groundmem/agents/session.h"
#include "groundmem/config.h"
#include "groundmem/error.h"
#include "groundmem/eval/metrics.h"
#include "groundmem/io/bundle.h"
#include "groundmem/io/instance_io.h"
#include "groundmem/lift/grounding_pipeline.h"
#include "groundmem/memory/visual_memory.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace groundmem {
namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitSession = 4;

int ExitCodeFor(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kInvalidArgument: return kExitUsage;
    case ErrorKind::kData: return kExitData;
    case ErrorKind::kSession: return kExitSession;
  }
  return kExitData;
}

Vec3 ParseVec3(const std::string& text, const std::string& flag) {
  std::stringstream ss(text);
  std::string item;
  std::vector<double> v;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidArgumentError(flag + ": '" + item + "' is not a number");
    }
  }
  if (v.size() != 3) throw InvalidArgumentError(flag + " expects x,y,z");
  return {v[0], v[1], v[2]};
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw FormatError(path.string(), "file", "cannot write");
}

struct ClientFlags {
  std::string clients;
  std::string transcript;
  std::string script;
  std::string record;
};

void AddClientFlags(CLI::App* cmd, ClientFlags& f) {
  cmd->add_option("--clients", f.clients, "JSON file mapping roles to client transports");
  cmd->add_option("--transcript", f.transcript, "Replay every role from a transcript JSONL");
  cmd->add_option("--script", f.script,
                  "JSON object of per-role reply lists, served in order");
  cmd->add_option("--record", f.record, "Append every exchange to this transcript JSONL");
}

// Keeps recording streams alive alongside the clients.
struct ClientBundle {
  ClientSet set;
  std::unique_ptr<std::ofstream> record;
};

ClientBundle MakeClients(const ClientFlags& f, const SceneBundle& bundle,
                         const EngineConfig& config) {
  const int sources = int(!f.clients.empty()) + int(!f.transcript.empty()) + int(!f.script.empty());
  if (sources == 0) {
    throw InvalidArgumentError("no model client configured: pass --clients, --transcript or --script");
  }
  if (sources > 1) throw InvalidArgumentError("--clients, --transcript and --script are exclusive");
  ClientBundle out;
  std::map<std::string, std::shared_ptr<ModelClient>> roles;
  if (!f.transcript.empty()) {
    roles["default"] = std::make_shared<TranscriptClient>(fs::path(f.transcript));
  } else if (!f.script.empty()) {
    std::ifstream in(f.script);
    if (!in) throw FormatError(f.script, "file", "cannot open script");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw FormatError(f.script, "json", e.what());
    }
    if (!j.is_object()) throw FormatError(f.script, "root", "expected an object of roles");
    for (const auto& [role, replies] : j.items()) {
      std::vector<std::string> list;
      for (const json& r : replies) list.push_back(r.is_string() ? r.get<std::string>() : r.dump());
      roles[role] = std::make_shared<ScriptedClient>(std::move(list));
    }
  } else {
    std::ifstream in(f.clients);
    if (!in) throw FormatError(f.clients, "file", "cannot open client config");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw FormatError(f.clients, "json", e.what());
    }
    roles = ClientSet::FromJson(j, fs::path(f.clients).parent_path(), bundle.root,
                                config.limits.client_retries,
                                std::chrono::milliseconds(config.limits.backoff_ms))
                .roles();
  }
  if (!f.record.empty()) {
    out.record = std::make_unique<std::ofstream>(f.record, std::ios::trunc);
    if (!*out.record) throw FormatError(f.record, "file", "cannot open for writing");
    for (auto& [role, client] : roles) {
      client = std::make_shared<RecordingClient>(client, *out.record);
    }
  }
  for (auto& [role, client] : roles) out.set.Set(role, client);
  return out;
}

EngineConfig LoadConfig(const std::string& path) {
  return path.empty() ? EngineConfig{} : EngineConfig::Load(path);
}

int CmdGround(const std::string& bundle_dir, std::vector<std::string> labels, bool browse,
              const std::string& query, EngineConfig config, std::string out_dir, int jobs,
              const std::string& stub_dir, const ClientFlags& client_flags) {
  if (labels.empty() && !browse) {
    throw InvalidArgumentError("ground needs --labels or --browse");
  }
  if (jobs < 1) throw InvalidArgumentError("--jobs must be >= 1");
  const SceneBundle bundle = LoadBundle(bundle_dir);
  if (out_dir.empty()) out_dir = bundle_dir;

  json browse_json = nullptr;
  if (browse) {
    ClientBundle clients = MakeClients(client_flags, bundle, config);
    const BrowseResult b = BrowseScene(bundle, config.browse.sample_count,
                                       clients.set.For("grounder"), query);
    browse_json = b.ToJson();
    for (const std::string& l : b.labels) {
      if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    }
  }

  std::unique_ptr<FileStubSegmenter> segmenter;
  if (!stub_dir.empty()) segmenter = std::make_unique<FileStubSegmenter>(stub_dir);
  GroundingOptions options;
  options.labels = labels;
  options.segmenter = segmenter.get();
  options.jobs = jobs;
  const GroundingResult result = RunGrounding(bundle, options, config);

  const fs::path out(out_dir);
  fs::create_directories(out);
  WriteInstances(result.instances, out / "instances.json");
  std::string audit;
  for (const AuditEntry& a : result.audit) audit += a.ToJson().dump() + "\n";
  WriteText(out / "audit.jsonl", audit);
  std::string overlaps;
  for (const OverlapEvent& e : result.overlap_events) overlaps += e.ToJson().dump() + "\n";
  WriteText(out / "overlaps.jsonl", overlaps);

  json summary = {{"labels", labels},
                  {"instances", result.instances.size()},
                  {"stats", result.stats.ToJson()},
                  {"output", (out / "instances.json").string()}};
  if (!browse_json.is_null()) summary["browse"] = browse_json;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int CmdRetrieve(const std::string& bundle_dir, std::optional<int> instance_id,
                const std::string& instances_path, const std::string& anchor,
                const std::string& direction, int k, double delta, std::string out_dir,
                const EngineConfig& config) {
  if (instance_id.has_value() == !anchor.empty()) {
    throw InvalidArgumentError("retrieve needs exactly one of --instance-id or --anchor/--dir");
  }
  if (anchor.empty() != direction.empty()) {
    throw InvalidArgumentError("--anchor and --dir go together");
  }
  if (k < 1) throw InvalidArgumentError("-k must be >= 1");
  if (!(delta > 0.0)) throw InvalidArgumentError("--delta must be > 0");

  std::optional<Region> region;
  std::string key;
  std::optional<InstanceRecord> record;
  if (instance_id) {
    const fs::path path = instances_path.empty() ? fs::path(bundle_dir) / "instances.json"
                                                 : fs::path(instances_path);
    for (InstanceRecord& r : ReadInstances(path)) {
      if (r.id == *instance_id) record = std::move(r);
    }
    if (!record) {
      throw InvalidArgumentError("unknown instance id " + std::to_string(*instance_id) + " in " +
                                 path.string());
    }
    region = RegionFromBox(record->aabb);
    key = "instance:" + std::to_string(*instance_id);
  } else {
    region = RegionFromDirection(ParseVec3(anchor, "--anchor"), ParseVec3(direction, "--dir"));
    key = "front:" + region->Describe();
  }

  const SceneBundle bundle = LoadBundle(bundle_dir);
  ViewCache cache;
  if (record && config.retrieval.scoring == FrameScoring::kMaskArea) {
    cache = RetrieveByMaskArea(bundle, record->label, k);
  } else {
    const std::vector<MemoryEntry> memory = BuildMemoryEntries(bundle);
    cache = Retrieve(memory, *region, k, delta);
  }
  cache.key = key;

  const fs::path out = out_dir.empty() ? fs::path(bundle_dir) / "views" : fs::path(out_dir);
  fs::create_directories(out / "frames");
  json manifest = cache.ToJson();
  for (size_t i = 0; i < cache.frames.size(); ++i) {
    const RankedFrame& f = cache.frames[i];
    const fs::path src = bundle.Resolve(f.rgb_path);
    const fs::path dst = out / "frames" /
                         (std::to_string(i) + "_" + std::to_string(f.frame_index) +
                          src.extension().string());
    fs::copy_file(src, dst, fs::copy_options::overwrite_existing);
    manifest["frames"][i]["copy"] = fs::relative(dst, out).string();
  }
  WriteText(out / "cache.json", manifest.dump(2) + "\n");
  std::cout << manifest.dump(2) << "\n";
  return 0;
}

int CmdEval(const std::string& input, const std::string& output) {
  std::ifstream in(input);
  if (!in) throw FormatError(input, "file", "cannot open");
  const std::vector<JudgedCase> cases = ReadJudgedCases(in, input);
  const json report = EvaluationReport(cases);
  if (!output.empty()) WriteText(output, report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return 0;
}

void WriteSessionOutputs(const fs::path& out, const SessionResult& r) {
  fs::create_directories(out);
  std::ostringstream trace;
  WriteTrace(r.trace, trace);
  WriteText(out / "trace.jsonl", trace.str());
  WriteText(out / "memory.json", r.memory.Dump().dump(2) + "\n");
  WriteText(out / "answer.json", r.Summary().dump(2) + "\n");
}

int CmdOrchestrate(const std::string& bundle_dir, const std::string& query,
                   const ClientFlags& client_flags, EngineConfig config, std::string out_dir,
                   const std::string& ego, const std::string& stub_dir) {
  if (query.empty()) throw InvalidArgumentError("--query is required");
  const SceneBundle bundle = LoadBundle(bundle_dir);
  ClientBundle clients = MakeClients(client_flags, bundle, config);

  SubprocessConfig exec_cfg;
  exec_cfg.interpreter = config.limits.interpreter;
  exec_cfg.timeout_s = config.limits.executor_timeout_s;
  SubprocessExecutor executor(exec_cfg);

  SessionOptions options;
  if (!ego.empty()) {
    const size_t split = ego.find(';');
    if (split == std::string::npos) {
      throw InvalidArgumentError("--ego expects 'px,py,pz;fx,fy,fz'");
    }
    const Vec3 p = ParseVec3(ego.substr(0, split), "--ego position");
    const Vec3 f = ParseVec3(ego.substr(split + 1), "--ego facing");
    options.ego = EgoPose::FromJson({{"position", {p.x(), p.y(), p.z()}},
                                     {"facing", {f.x(), f.y(), f.z()}}});
  }
  std::unique_ptr<FileStubSegmenter> segmenter;
  if (!stub_dir.empty()) segmenter = std::make_unique<FileStubSegmenter>(stub_dir);
  options.segmenter = segmenter.get();

  const fs::path out = out_dir.empty() ? fs::path(bundle_dir) / "session" : fs::path(out_dir);
  try {
    const SessionResult r = RunSession(query, bundle, clients.set, executor, config, options);
    WriteSessionOutputs(out, r);
    std::cout << r.answer << "\n";
    if (r.budget_exhausted) std::cout << "[budget-exhausted]\n";
    return 0;
  } catch (const SessionFailure& e) {
    WriteSessionOutputs(out, e.partial());
    throw;
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"groundmem: 3D scene memory, grounding and agent orchestration"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Engine configuration JSON");

  // ground
  auto* ground = app.add_subcommand("ground", "Ground labels into 3D instances");
  std::string g_bundle, g_out, g_query = "objects in the scene", g_stub;
  std::vector<std::string> g_labels;
  bool g_browse = false;
  int g_jobs = 1;
  std::optional<double> g_tau;
  std::optional<int> g_min_support;
  ClientFlags g_clients;
  ground->add_option("bundle", g_bundle, "Scene bundle directory")->required();
  ground->add_option("--labels", g_labels, "Labels to ground")->delimiter(',');
  ground->add_flag("--browse", g_browse, "Ask the grounder model for candidate labels");
  ground->add_option("--query", g_query, "Query shown when browsing");
  ground->add_option("--out", g_out, "Output directory (default: the bundle)");
  ground->add_option("--jobs", g_jobs, "Worker threads for per-frame stages");
  ground->add_option("--segmenter-stub", g_stub, "Directory of canned segmenter responses");
  ground->add_option("--tau", g_tau, "Association threshold");
  ground->add_option("--min-support", g_min_support, "Minimum points per instance");
  AddClientFlags(ground, g_clients);

  // retrieve
  auto* retrieve = app.add_subcommand("retrieve", "Rank views covering an instance or region");
  std::string r_bundle, r_instances, r_anchor, r_dir, r_out;
  std::optional<int> r_id, r_k;
  std::optional<double> r_delta;
  retrieve->add_option("bundle", r_bundle, "Scene bundle directory")->required();
  retrieve->add_option("--instance-id", r_id, "Instance id from the instances file");
  retrieve->add_option("--instances", r_instances, "Instances file (default: BUNDLE/instances.json)");
  retrieve->add_option("--anchor", r_anchor, "Anchor x,y,z");
  retrieve->add_option("--dir", r_dir, "Facing direction x,y,z");
  retrieve->add_option("-k", r_k, "Number of views");
  retrieve->add_option("--delta", r_delta, "Voxel size in meters");
  retrieve->add_option("--out", r_out, "Output directory (default: BUNDLE/views)");

  // eval
  auto* eval = app.add_subcommand("eval", "Score judged QA cases");
  std::string e_input, e_output;
  eval->add_option("judged", e_input, "JSONL of judged cases")->required();
  eval->add_option("--out", e_output, "Also write the report here");

  // orchestrate
  auto* orch = app.add_subcommand("orchestrate", "Answer a query with the agent loop");
  std::string o_bundle, o_query, o_out, o_ego, o_stub, o_mode;
  std::optional<int> o_max_steps;
  ClientFlags o_clients;
  orch->add_option("bundle", o_bundle, "Scene bundle directory")->required();
  orch->add_option("--query", o_query, "Question to answer")->required();
  orch->add_option("--out", o_out, "Output directory (default: BUNDLE/session)");
  orch->add_option("--max-steps", o_max_steps, "Planner step budget");
  orch->add_option("--ego", o_ego, "Ego pose 'px,py,pz;fx,fy,fz'");
  orch->add_option("--mode", o_mode, "multi-agent or tool-use")
      ->check(CLI::IsMember({"multi-agent", "tool-use"}));
  orch->add_option("--segmenter-stub", o_stub, "Directory of canned segmenter responses");
  AddClientFlags(orch, o_clients);

  // config
  auto* cfg = app.add_subcommand("config", "Write or check configuration files");
  cfg->require_subcommand(1);
  auto* cfg_init = cfg->add_subcommand("init", "Print the full default configuration");
  std::string init_out;
  cfg_init->add_option("--out", init_out, "Write to this file instead of stdout");
  auto* cfg_validate = cfg->add_subcommand("validate", "Validate a configuration file");
  std::string validate_path;
  cfg_validate->add_option("file", validate_path, "Configuration JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cfg_init) {
      const std::string text = EngineConfig{}.ToJson().dump(2) + "\n";
      if (init_out.empty()) std::cout << text;
      else WriteText(init_out, text);
      return 0;
    }
    if (*cfg_validate) {
      EngineConfig::Load(validate_path);
      std::cout << validate_path << ": ok\n";
      return 0;
    }

    EngineConfig config = LoadConfig(config_path);
    if (*ground) {
      if (g_tau) config.association.tau = *g_tau;
      if (g_min_support) config.association.min_support = *g_min_support;
      config.Validate();
      return CmdGround(g_bundle, g_labels, g_browse, g_query, config, g_out, g_jobs, g_stub,
                       g_clients);
    }
    if (*retrieve) {
      if (r_k) config.retrieval.k = *r_k;
      if (r_delta) config.retrieval.voxel = *r_delta;
      config.Validate();
      return CmdRetrieve(r_bundle, r_id, r_instances, r_anchor, r_dir, config.retrieval.k,
                         config.retrieval.voxel, r_out, config);
    }
    if (*eval) return CmdEval(e_input, e_output);
    if (*orch) {
      if (o_max_steps) config.limits.max_steps = *o_max_steps;
      if (o_mode == "tool-use") config.mode = OrchestrationMode::kToolUse;
      if (o_mode == "multi-agent") config.mode = OrchestrationMode::kMultiAgent;
      config.Validate();
      return CmdOrchestrate(o_bundle, o_query, o_clients, config, o_out, o_ego, o_stub);
    }
  } catch (const Error& e) {
    std::cerr << "groundmem: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "groundmem: " << e.what() << "\n";
    return kExitData;
  } catch (const json::exception& e) {
    std::cerr << "groundmem: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace groundmem

int main(int argc, char** argv) { return groundmem::Main(argc, argv); }
