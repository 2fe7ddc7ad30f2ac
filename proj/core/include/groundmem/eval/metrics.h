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

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace groundmem {

struct JudgedCase {
  std::string case_id;
  std::optional<std::string> object_id;
  int pair_index = 0;  // 1..3 when object_id is set
  int judge_score = 1;  // 1..5
  std::optional<bool> grounding_correct;

  static JudgedCase FromJson(const nlohmann::json& j);
};

// Judge scores at or above this count as a correct answer.
inline constexpr int kQaPassScore = 4;

// mean((M - 1) / 4) * 100. Throws InvalidArgumentError on an empty list.
double CaseScore(std::span<const JudgedCase> cases);

// Percentage of objects whose three QA pairs all score >= 4. Only cases with
// an object_id take part. Throws InvalidArgumentError when an object does not
// have exactly three pairs (k = 1, 2, 3) or no objects are present.
double ObjectScore(std::span<const JudgedCase> cases);

enum class ChainOutcome { kGood, kType1, kType2, kDouble };

// (grounding, qa): G = (ok, ok), T1 = (ok, wrong), T2 = (wrong, ok), D = (wrong, wrong).
ChainOutcome ClassifyChain(bool grounding_correct, bool qa_correct);

struct ChainCounts {
  double good = 0;
  double type1 = 0;
  double type2 = 0;
  double double_failure = 0;
};

struct ChainStats {
  // Percentages of all records.
  double good = 0;
  double type1 = 0;
  double type2 = 0;
  double double_failure = 0;
  // T1 / (T1 + D) * 100 and T2 / (T2 + G) * 100; empty when the denominator is 0.
  std::optional<double> r1;
  std::optional<double> r2;
  int64_t records = 0;

  nlohmann::json ToJson() const;
};

// From counts or published percentages.
ChainStats ChainStatsFromCounts(const ChainCounts& counts);

// qa_correct is judge_score >= 4. Throws InvalidArgumentError if any record
// lacks grounding_correct or the list is empty.
ChainStats ComputeChainStats(std::span<const JudgedCase> cases);

// Reads JSONL judged cases, one object per line; blank lines are skipped.
// Throws FormatError carrying the 1-based line number.
std::vector<JudgedCase> ReadJudgedCases(std::istream& in, const std::string& source);

// {"cases", "case_score", "object_score"?, "chain"?}; metrics whose inputs
// are absent are omitted.
nlohmann::json EvaluationReport(std::span<const JudgedCase> cases);

}  // namespace groundmem
