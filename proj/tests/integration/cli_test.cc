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

// Drives the installed command-line tools end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.h"

namespace {
namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new groundmem::oracle::TempDir();
    bundle_ = (dir_->path() / "bundle").string();
    ASSERT_EQ(Shell(std::string(GROUNDMEM_SYNTH_BIN) + " " + bundle_ +
                    " --frames 6 --width 160 --height 120 --spacing 0.04")
                  .code,
              0);
  }
  static void TearDownTestSuite() { delete dir_; }

  static Outcome Shell(const std::string& cmd) {
    const fs::path out = dir_->path() / "stdout.txt";
    const fs::path err = dir_->path() / "stderr.txt";
    const int raw = std::system((cmd + " >" + out.string() + " 2>" + err.string()).c_str());
    Outcome o;
    o.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    o.out = groundmem::oracle::ReadFile(out);
    o.err = groundmem::oracle::ReadFile(err);
    return o;
  }
  static Outcome Cli(const std::string& args) {
    return Shell(std::string(GROUNDMEM_CLI_BIN) + " " + args);
  }
  static fs::path Scratch(const std::string& name) { return dir_->path() / name; }

  static groundmem::oracle::TempDir* dir_;
  static std::string bundle_;
};
groundmem::oracle::TempDir* CliTest::dir_ = nullptr;
std::string CliTest::bundle_;

TEST_F(CliTest, GroundWritesInstancesAndAudit) {
  const fs::path out = Scratch("ground");
  const Outcome o = Cli("ground " + bundle_ + " --labels chair,table --out " + out.string());
  ASSERT_EQ(o.code, 0) << o.err;
  const json inst = json::parse(groundmem::oracle::ReadFile(out / "instances.json"));
  const json& list = inst.is_array() ? inst : inst.at("instances");
  EXPECT_EQ(list.size(), 3u);
  EXPECT_TRUE(fs::exists(out / "audit.jsonl"));
  EXPECT_TRUE(fs::exists(out / "overlaps.jsonl"));
}

TEST_F(CliTest, StricterTauGivesMoreInstances) {
  const fs::path loose = Scratch("loose"), strict = Scratch("strict");
  ASSERT_EQ(Cli("ground " + bundle_ + " --labels chair,table --out " + loose.string()).code, 0);
  ASSERT_EQ(Cli("ground " + bundle_ + " --labels chair,table --tau 0.9 --out " +
                strict.string())
                .code,
            0);
  auto count = [](const fs::path& p) {
    const json j = json::parse(groundmem::oracle::ReadFile(p / "instances.json"));
    return (j.is_array() ? j : j.at("instances")).size();
  };
  EXPECT_GT(count(strict), count(loose));
}

TEST_F(CliTest, RetrieveByInstanceAndDirection) {
  const fs::path g = Scratch("ground_r");
  ASSERT_EQ(Cli("ground " + bundle_ + " --labels chair --out " + g.string()).code, 0);
  const fs::path views = Scratch("views");
  const Outcome o = Cli("retrieve " + bundle_ + " --instance-id 0 --instances " +
                        (g / "instances.json").string() + " -k 2 --out " + views.string());
  ASSERT_EQ(o.code, 0) << o.err;
  const json cache = json::parse(groundmem::oracle::ReadFile(views / "cache.json"));
  EXPECT_EQ(cache.at("key"), "instance:0");
  EXPECT_EQ(cache.at("frames").size(), 2u);

  const Outcome front = Cli("retrieve " + bundle_ + " --anchor -1,0,0 --dir 1,0,0 --out " +
                            Scratch("views_front").string());
  EXPECT_EQ(front.code, 0) << front.err;
  const Outcome vertical = Cli("retrieve " + bundle_ + " --anchor 0,0,0 --dir 0,0,1 --out " +
                               Scratch("views_up").string());
  EXPECT_NE(vertical.code, 0);
  EXPECT_FALSE(vertical.err.empty());
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli("ground").code, 2);
  EXPECT_EQ(Cli("frobnicate").code, 2);
  EXPECT_EQ(Cli("ground /nonexistent/bundle --labels chair").code, 3);
  // Neither --labels nor --browse.
  EXPECT_EQ(Cli("ground " + bundle_).code, 2);
  // The orchestrator without any model client.
  EXPECT_EQ(Cli("orchestrate " + bundle_ + " --query q --out " + Scratch("s0").string()).code, 2);

  std::ofstream(Scratch("empty.jsonl")) << "";
  const Outcome session = Cli("orchestrate " + bundle_ + " --query q --transcript " +
                              Scratch("empty.jsonl").string() + " --out " +
                              Scratch("s1").string());
  EXPECT_EQ(session.code, 4);
  EXPECT_TRUE(fs::exists(Scratch("s1") / "trace.jsonl"));

  std::ofstream(Scratch("bad.json")) << R"({"association": {"tau": 7}})";
  EXPECT_EQ(Cli("config validate " + Scratch("bad.json").string()).code, 2);
  EXPECT_EQ(Cli("config init --out " + Scratch("good.json").string()).code, 0);
  EXPECT_EQ(Cli("config validate " + Scratch("good.json").string()).code, 0);
}

TEST_F(CliTest, StepBudgetFlag) {
  const json script = {{"planner", {{{"kind", "plan"}, {"payload", json::object()}},
                                    {{"kind", "answer"}, {"payload", {{"text", "late"}}}}}}};
  std::ofstream(Scratch("script.json")) << script.dump();
  const fs::path out = Scratch("budget");
  const Outcome o = Cli("orchestrate " + bundle_ + " --query q --max-steps 1 --script " +
                        Scratch("script.json").string() + " --out " + out.string());
  ASSERT_EQ(o.code, 0) << o.err;
  const json answer = json::parse(groundmem::oracle::ReadFile(out / "answer.json"));
  EXPECT_TRUE(answer.at("budget_exhausted").get<bool>());
  EXPECT_EQ(answer.at("steps"), 1);
}

TEST_F(CliTest, EvalReport) {
  std::ofstream(Scratch("judged.jsonl"))
      << R"({"case_id": "a", "judge_score": 1})" << "\n"
      << R"({"case_id": "b", "judge_score": 3})" << "\n"
      << R"({"case_id": "c", "judge_score": 5})" << "\n";
  const Outcome o = Cli("eval " + Scratch("judged.jsonl").string());
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_DOUBLE_EQ(json::parse(o.out).at("case_score").get<double>(), 50.0);
  std::ofstream(Scratch("judged_bad.jsonl")) << "{\"case_id\": 1}\n";
  EXPECT_EQ(Cli("eval " + Scratch("judged_bad.jsonl").string()).code, 3);
}

TEST_F(CliTest, GoldenTranscriptReplaysExactly) {
  const fs::path golden = GROUNDMEM_GOLDEN_DIR;
  const fs::path out = Scratch("golden");
  const Outcome o = Cli("orchestrate " + (golden / "bundle").string() +
                        " --query \"How far is the chair from me?\" --ego \"2,0.5,0.25;-1,0,0\""
                        " --transcript " + (golden / "transcript.jsonl").string() +
                        " --out " + out.string());
  ASSERT_EQ(o.code, 0) << o.err;
  for (const char* name : {"trace.jsonl", "memory.json", "answer.json"}) {
    EXPECT_EQ(groundmem::oracle::ReadFile(out / name),
              groundmem::oracle::ReadFile(golden / "expected" / name))
        << name;
  }
}

}  // namespace
