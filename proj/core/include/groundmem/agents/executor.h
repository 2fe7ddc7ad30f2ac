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

#include <functional>
#include <string>

#include <nlohmann/json.hpp>

namespace groundmem {

struct ExecutionResult {
  std::string stdout_text;
  std::string stderr_text;
  int exit_status = 0;  // 128 + signal when killed
  bool timed_out = false;

  bool ok() const { return exit_status == 0 && !timed_out; }
  nlohmann::json ToJson() const;
};

class ProgramExecutor {
 public:
  virtual ~ProgramExecutor() = default;
  // Runs `source` with `bindings` available to it. Program failures are
  // reported in the result; only plumbing failures throw SessionError.
  virtual ExecutionResult Run(const std::string& source, const nlohmann::json& bindings) = 0;
};

// Helper library prepended to every program run by SubprocessExecutor:
// BINDINGS, MEMORY, INSTANCES, EGO, instances(label), instance(id),
// box_center, box_size, box_volume, box_distance, direction(target, ego),
// count(label) and emit(value).
extern const char kPythonPreamble[];

struct SubprocessConfig {
  std::string interpreter = "python3";
  double timeout_s = 20.0;
  bool with_preamble = true;
  size_t max_output_bytes = 1 << 20;  // per stream; the rest is discarded
};

// Writes the program and a bindings.json file into a fresh scratch
// directory, then runs `interpreter program.py bindings.json` there with a
// minimal environment and, where the kernel allows it, a private network
// namespace. The process group is killed when the wall-clock timeout hits.
class SubprocessExecutor : public ProgramExecutor {
 public:
  explicit SubprocessExecutor(SubprocessConfig config = {});
  ExecutionResult Run(const std::string& source, const nlohmann::json& bindings) override;

  const SubprocessConfig& config() const { return config_; }

 private:
  SubprocessConfig config_;
};

// Delegates to a callback; for tests and embedding.
class CallbackExecutor : public ProgramExecutor {
 public:
  using Fn = std::function<ExecutionResult(const std::string&, const nlohmann::json&)>;
  explicit CallbackExecutor(Fn fn) : fn_(std::move(fn)) {}
  ExecutionResult Run(const std::string& source, const nlohmann::json& bindings) override {
    ++calls_;
    return fn_(source, bindings);
  }
  int calls() const { return calls_; }

 private:
  Fn fn_;
  int calls_ = 0;
};

}  // namespace groundmem
