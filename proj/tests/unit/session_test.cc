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

#include <gtest/gtest.h>

#include "groundmem/error.h"
#include "synth/synthetic_scene.h"

namespace groundmem {
namespace {
using nlohmann::json;

std::shared_ptr<ScriptedClient> Script(const std::vector<json>& replies) {
  std::vector<std::string> text;
  for (const json& r : replies) text.push_back(r.is_string() ? r.get<std::string>() : r.dump());
  return std::make_shared<ScriptedClient>(std::move(text));
}

json Act(const std::string& kind, json payload, const std::string& summary = "") {
  json j = {{"kind", kind}, {"payload", std::move(payload)}};
  if (!summary.empty()) j["summary"] = summary;
  return j;
}

ExecutionResult Ok(const std::string& out) { return {out, "", 0, false}; }
ExecutionResult Crash() { return {"", "Traceback: ZeroDivisionError", 1, false}; }

class SessionTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    synth::SynthConfig cfg;
    cfg.frames = 4;
    cfg.width = 120;
    cfg.height = 90;
    cfg.spacing = 0.04;
    auto objects = synth::DefaultObjects();
    bundle_ = new SceneBundle(synth::MakeSyntheticBundle({objects[0], objects[2]}, cfg));
  }
  static void TearDownTestSuite() { delete bundle_; }

  SessionResult Run(const std::string& query = "Where is the chair?") {
    return RunSession(query, *bundle_, clients_, executor_, config_, options_);
  }

  static SceneBundle* bundle_;
  ClientSet clients_;
  CallbackExecutor executor_{[](const std::string&, const json&) { return Ok("1"); }};
  EngineConfig config_;
  SessionOptions options_;
};
SceneBundle* SessionTest::bundle_ = nullptr;

TEST_F(SessionTest, ImmediateAnswer) {
  clients_.Set("planner", Script({Act("answer", {{"text", "No idea."}})}));
  const SessionResult r = Run();
  EXPECT_EQ(r.answer, "No idea.");
  EXPECT_FALSE(r.budget_exhausted);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].kind, ActionKind::kAnswer);
  EXPECT_EQ(r.memory.notes().front().text, "query: Where is the chair?");
}

TEST_F(SessionTest, DefaultBudgetIsTwelveSteps) {
  std::vector<json> plans(20, Act("plan", {{"subgoals", {"think"}}}, "still thinking"));
  auto planner = Script(plans);
  clients_.Set("planner", planner);
  const SessionResult r = Run();
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_EQ(r.trace.size(), 12u);
  EXPECT_EQ(planner->consumed(), 12u);
  EXPECT_EQ(r.answer, "still thinking");
  EXPECT_EQ(r.Summary().at("steps"), 12);
}

TEST_F(SessionTest, BudgetWithoutSummaryDigestsMemory) {
  config_.limits.max_steps = 2;
  clients_.Set("planner", Script({Act("plan", json::object()), Act("plan", json::object())}));
  const SessionResult r = Run();
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_NE(r.answer.find("No answer within 2 steps"), std::string::npos);
}

TEST_F(SessionTest, FreeTextIsRepromptedOnce) {
  clients_.Set("planner", Script({"Let me think about it.", Act("answer", {{"text", "ok"}})}));
  EXPECT_EQ(Run().answer, "ok");

  clients_.Set("planner", Script({"prose", "more prose"}));
  try {
    Run();
    FAIL();
  } catch (const SessionFailure& f) {
    EXPECT_TRUE(f.partial().trace.empty());
  }
}

TEST_F(SessionTest, ClientFailureCarriesPartialTrace) {
  clients_.Set("planner", Script({Act("plan", json::object())}));
  try {
    Run();
    FAIL();
  } catch (const SessionFailure& f) {
    EXPECT_EQ(f.partial().trace.size(), 1u);
  }
}

TEST_F(SessionTest, GroundRetrieveCodeAnswer) {
  options_.ego = EgoPose{Vec3(2, 0, 0.2), Vec3(-1, 0, 0)};
  clients_.Set("planner",
               Script({Act("ground", {{"prompt", "chair"}, {"mode", "clear"}}),
                       Act("retrieve", {{"instance_id", 0}, {"k", 2}}),
                       Act("ground", {{"prompt", "chair, table"}, {"mode", "clear"}}),
                       Act("code", {{"question", "distance?"}, {"name", "dist"}}),
                       Act("answer", {{"text", "2 m"}})}));
  clients_.Set("coder", Script({{{"code", "emit(2.0)"}, {"final", true}}}));
  json seen_bindings;
  CallbackExecutor exec([&](const std::string&, const json& b) {
    seen_bindings = b;
    return Ok("2.0\n");
  });
  const SessionResult r = RunSession("How far?", *bundle_, clients_, exec, config_, options_);
  ASSERT_EQ(r.trace.size(), 5u);
  EXPECT_EQ(r.trace[0].result.at("created"), 1);
  // The second grounding reuses the chair and adds only the table.
  EXPECT_EQ(r.trace[2].result.at("created"), 1);
  EXPECT_EQ(r.memory.instances().size(), 2u);
  EXPECT_EQ(r.memory.instances()[1].record.label, "table");
  EXPECT_EQ(r.trace[1].result.at("key"), "instance:0");
  EXPECT_LE(r.trace[1].result.at("frames").size(), 2u);
  EXPECT_EQ(r.memory.measurements().at("dist").value, 2.0);
  EXPECT_EQ(seen_bindings.at("memory").at("instances").size(), 2u);
  EXPECT_EQ(seen_bindings.at("question"), "distance?");
  EXPECT_EQ(r.answer, "2 m");
}

TEST_F(SessionTest, BadPayloadReturnsErrorToPlanner) {
  clients_.Set("planner", Script({Act("retrieve", {{"instance_id", 7}}),
                                  Act("answer", {{"text", "gave up"}})}));
  const SessionResult r = Run();
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_TRUE(r.trace[0].result.contains("error"));
}

TEST_F(SessionTest, CodingLoopStopsAtTMax) {
  config_.limits.coding_rounds = 3;
  clients_.Set("planner", Script({Act("code", {{"question", "q"}, {"name", "m"}}),
                                  Act("answer", {{"text", "x"}})}));
  std::vector<json> replies(10, {{"code", "1/0"}, {"final", true}});
  clients_.Set("coder", Script(replies));
  CallbackExecutor exec([](const std::string&, const json&) { return Crash(); });
  const SessionResult r = RunSession("q", *bundle_, clients_, exec, config_, options_);
  EXPECT_EQ(exec.calls(), 3);
  const Measurement& m = r.memory.measurements().at("m");
  EXPECT_FALSE(m.ok);
  EXPECT_TRUE(m.value.is_null());
  EXPECT_EQ(r.trace[0].result.at("executions"), 3);
}

TEST_F(SessionTest, CrashThenSuccessFeedsErrorBack) {
  std::vector<ChatRequest> coder_requests;
  class Capture : public ModelClient {
   public:
    explicit Capture(std::vector<ChatRequest>* log) : log_(log) {}
    std::string Complete(const ChatRequest& r) override {
      log_->push_back(r);
      return log_->size() == 1 ? json{{"code", "1/0"}, {"final", true}}.dump()
                               : json{{"code", "emit(3)"}, {"final", true}}.dump();
    }

   private:
    std::vector<ChatRequest>* log_;
  };
  clients_.Set("planner", Script({Act("code", {{"question", "q"}, {"name", "m"}}),
                                  Act("answer", {{"text", "x"}})}));
  clients_.Set("coder", std::make_shared<Capture>(&coder_requests));
  int run = 0;
  CallbackExecutor exec([&](const std::string&, const json&) {
    return ++run == 1 ? Crash() : Ok("3\n");
  });
  const SessionResult r = RunSession("q", *bundle_, clients_, exec, config_, options_);
  EXPECT_EQ(exec.calls(), 2);
  ASSERT_EQ(coder_requests.size(), 2u);
  EXPECT_NE(coder_requests[1].messages.back().text.find("ZeroDivisionError"),
            std::string::npos);
  EXPECT_TRUE(r.memory.measurements().at("m").ok);
  EXPECT_EQ(r.memory.measurements().at("m").value, 3);
}

TEST_F(SessionTest, VagueGroundingBrowsesFirst) {
  clients_.Set("planner", Script({Act("ground", {{"prompt", "something to sit on"},
                                                {"mode", "vague"}}),
                                  Act("answer", {{"text", "x"}})}));
  clients_.Set("grounder", Script({"- Chair\n- chair\n"}));
  const SessionResult r = Run();
  EXPECT_EQ(r.trace[0].result.at("labels"), json({"chair"}));
  EXPECT_EQ(r.memory.instances().size(), 1u);
}

TEST_F(SessionTest, ToolUseRunsProgramsDirectly) {
  config_.mode = OrchestrationMode::kToolUse;
  clients_.Set("planner", Script({Act("browse", json::object()),
                                  "chair",
                                  Act("code", {{"program", "emit(count())"}, {"name", "n"}}),
                                  Act("answer", {{"text", "x"}})}));
  const SessionResult r = Run();
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.trace[0].result.at("labels"), json({"chair"}));
  EXPECT_EQ(executor_.calls(), 1);
  EXPECT_EQ(r.memory.measurements().at("n").value, 1);
}

TEST_F(SessionTest, MissingPlannerIsUsageError) {
  EXPECT_THROW(Run(), InvalidArgumentError);
}

TEST(DispatchHelpersTest, SampleUniform) {
  EXPECT_EQ(SampleUniform(10, 4), (std::vector<int>{0, 2, 5, 7}));
  EXPECT_EQ(SampleUniform(3, 8), (std::vector<int>{0, 1, 2}));
}

TEST(DispatchHelpersTest, LabelListParsing) {
  EXPECT_EQ(ParseLabelList("Chair, table\n- Lamp\n2. chair"),
            (std::vector<std::string>{"chair", "table", "lamp"}));
  EXPECT_EQ(ParseLabelList(R"(["Sofa", "tv stand"])"),
            (std::vector<std::string>{"sofa", "tv stand"}));
  EXPECT_EQ(ParseLabelList(R"({"labels": ["bed"]})"), (std::vector<std::string>{"bed"}));
  EXPECT_FALSE(ParseLabelList("I could not find anything that matches your description at all "
                              "in these frames, sorry.")
                   .has_value());
}

TEST(DispatchHelpersTest, ProgramOutputParsing) {
  EXPECT_EQ(ParseProgramOutput("{\"a\": 1}\n"), json({{"a", 1}}));
  EXPECT_EQ(ParseProgramOutput("debug line\n4.5\n"), 4.5);
  EXPECT_EQ(ParseProgramOutput("  hello world \n"), "hello world");
}

TEST(DispatchHelpersTest, EnvelopeParsing) {
  EXPECT_TRUE(ParseEnvelope("```json\n{\"kind\": \"plan\", \"payload\": {}}\n```").has_value());
  EXPECT_FALSE(ParseEnvelope("{\"kind\": \"dance\", \"payload\": {}}").has_value());
  EXPECT_FALSE(ParseEnvelope("hello").has_value());
}

TEST(DispatchHelpersTest, RetrievalPayloadValidation) {
  EXPECT_NO_THROW(RetrievalRequest::FromPayload({{"ego", true}}));
  EXPECT_THROW(RetrievalRequest::FromPayload({{"instance_id", 0}, {"ego", true}}), Error);
  EXPECT_THROW(RetrievalRequest::FromPayload(json::object()), Error);
}

}  // namespace
}  // namespace groundmem
