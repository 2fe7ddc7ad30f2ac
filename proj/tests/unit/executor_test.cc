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

#include "groundmem/agents/executor.h"

#include <chrono>

#include <gtest/gtest.h>

namespace groundmem {
namespace {
using nlohmann::json;

json Box(double x, double y, double z, double l = 1, double w = 1, double h = 1) {
  return {{"center", {x, y, z}}, {"size", {l, w, h}}, {"yaw", 0.0}};
}

json Memory() {
  return {{"memory",
           {{"instances",
             {{{"id", 0}, {"label", "chair"}, {"box", Box(3, 0, 0.5, 0.5, 0.4, 0.9)}},
              {{"id", 1}, {"label", "table"}, {"box", Box(0, 2, 0.4, 2, 1, 0.8)}},
              {{"id", 2}, {"label", "chair"}, {"box", Box(-1, -4, 0.5)}}}},
            {"measurements", json::object()},
            {"ego", {{"position", {0, 0, 0}}, {"facing", {1, 0, 0}}}}}}};
}

TEST(SubprocessExecutorTest, HelpersSeeTheMemory) {
  SubprocessExecutor exec;
  const auto r = exec.Run(
      "emit({'n': count('chair'), 'vol': box_volume(0), 'd': box_distance(0, 1),"
      " 'dirs': [direction(i) for i in range(3)], 'c': box_center(instance(1))})",
      Memory());
  ASSERT_TRUE(r.ok()) << r.stderr_text;
  const json out = json::parse(r.stdout_text);
  EXPECT_EQ(out.at("n"), 2);
  EXPECT_NEAR(out.at("vol").get<double>(), 0.5 * 0.4 * 0.9, 1e-12);
  EXPECT_NEAR(out.at("d").get<double>(), std::sqrt(9.0 + 4.0 + 0.01), 1e-12);
  EXPECT_EQ(out.at("dirs"), json({"front", "left", "right"}));
  EXPECT_EQ(out.at("c"), json({0, 2, 0.4}));
}

TEST(SubprocessExecutorTest, FailuresAreReportedNotThrown) {
  SubprocessExecutor exec;
  const auto r = exec.Run("instance(42)", Memory());
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.exit_status, 0);
  EXPECT_NE(r.stderr_text.find("KeyError"), std::string::npos);

  const auto syntax = exec.Run("def (", Memory());
  EXPECT_NE(syntax.stderr_text.find("SyntaxError"), std::string::npos);
}

TEST(SubprocessExecutorTest, TimeoutKillsTheProgram) {
  SubprocessConfig cfg;
  cfg.timeout_s = 0.5;
  SubprocessExecutor exec(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto r = exec.Run("import subprocess\nsubprocess.Popen(['sleep', '30'])\nwhile True:\n    pass\n",
                          Memory());
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(r.timed_out);
  EXPECT_FALSE(r.ok());
  EXPECT_LT(elapsed, 5.0);
  EXPECT_NE(r.stderr_text.find("timed out"), std::string::npos);
}

TEST(SubprocessExecutorTest, EnvironmentIsScrubbed) {
  setenv("GROUNDMEM_SECRET", "leak", 1);
  SubprocessExecutor exec;
  const auto r = exec.Run("import os\nemit(os.environ.get('GROUNDMEM_SECRET'))", json::object());
  unsetenv("GROUNDMEM_SECRET");
  ASSERT_TRUE(r.ok()) << r.stderr_text;
  EXPECT_EQ(json::parse(r.stdout_text), nullptr);
}

TEST(SubprocessExecutorTest, OutputIsCapped) {
  SubprocessConfig cfg;
  cfg.max_output_bytes = 1000;
  SubprocessExecutor exec(cfg);
  const auto r = exec.Run("import sys\nsys.stdout.write('x' * 100000)", json::object());
  EXPECT_TRUE(r.ok());
  EXPECT_LE(r.stdout_text.size(), 1000u);
}

TEST(SubprocessExecutorTest, MissingInterpreter) {
  SubprocessConfig cfg;
  cfg.interpreter = "/nonexistent/python";
  SubprocessExecutor exec(cfg);
  const auto r = exec.Run("emit(1)", json::object());
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.exit_status, 127);
}

TEST(CallbackExecutorTest, CountsCalls) {
  CallbackExecutor exec([](const std::string& src, const json&) {
    return ExecutionResult{src, "", 0, false};
  });
  EXPECT_EQ(exec.Run("abc", {}).stdout_text, "abc");
  EXPECT_EQ(exec.calls(), 1);
}

}  // namespace
}  // namespace groundmem
