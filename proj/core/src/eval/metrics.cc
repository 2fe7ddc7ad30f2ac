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

#include "groundmem/eval/metrics.h"

#include <map>
#include <set>

#include "groundmem/error.h"

namespace groundmem {
using nlohmann::json;

JudgedCase JudgedCase::FromJson(const json& j) {
  if (!j.is_object()) throw InvalidArgumentError("judged case must be a JSON object");
  JudgedCase c;
  const json& id = j.at("case_id");
  c.case_id = id.is_string() ? id.get<std::string>() : id.dump();
  if (j.contains("object_id") && !j["object_id"].is_null()) {
    const json& o = j["object_id"];
    c.object_id = o.is_string() ? o.get<std::string>() : o.dump();
    if (!j.contains("pair_index")) throw InvalidArgumentError("object case without pair_index");
    c.pair_index = j.at("pair_index").get<int>();
    if (c.pair_index < 1 || c.pair_index > 3) {
      throw InvalidArgumentError("pair_index must be 1, 2 or 3");
    }
  }
  c.judge_score = j.at("judge_score").get<int>();
  if (c.judge_score < 1 || c.judge_score > 5) {
    throw InvalidArgumentError("judge_score must lie in 1..5");
  }
  if (j.contains("grounding_correct") && !j["grounding_correct"].is_null()) {
    c.grounding_correct = j["grounding_correct"].get<bool>();
  }
  return c;
}

double CaseScore(std::span<const JudgedCase> cases) {
  if (cases.empty()) throw InvalidArgumentError("case score of an empty case list");
  double sum = 0.0;
  for (const JudgedCase& c : cases) sum += double(c.judge_score - 1) / 4.0;
  return sum / double(cases.size()) * 100.0;
}

double ObjectScore(std::span<const JudgedCase> cases) {
  std::map<std::string, std::map<int, int>> objects;
  for (const JudgedCase& c : cases) {
    if (!c.object_id) continue;
    auto& pairs = objects[*c.object_id];
    if (pairs.count(c.pair_index)) {
      throw InvalidArgumentError("object " + *c.object_id + " repeats pair " +
                                 std::to_string(c.pair_index));
    }
    pairs[c.pair_index] = c.judge_score;
  }
  if (objects.empty()) throw InvalidArgumentError("object score without object cases");
  int passed = 0;
  for (const auto& [id, pairs] : objects) {
    if (pairs.size() != 3) {
      throw InvalidArgumentError("object " + id + " has " + std::to_string(pairs.size()) +
                                 " QA pairs, expected 3");
    }
    int worst = 5;
    for (const auto& [k, m] : pairs) worst = std::min(worst, m);
    if (worst >= kQaPassScore) ++passed;
  }
  return double(passed) / double(objects.size()) * 100.0;
}

ChainOutcome ClassifyChain(bool grounding_correct, bool qa_correct) {
  if (grounding_correct) return qa_correct ? ChainOutcome::kGood : ChainOutcome::kType1;
  return qa_correct ? ChainOutcome::kType2 : ChainOutcome::kDouble;
}

json ChainStats::ToJson() const {
  return {{"G", good},
          {"T1", type1},
          {"T2", type2},
          {"D", double_failure},
          {"R1", r1 ? json(*r1) : json(nullptr)},
          {"R2", r2 ? json(*r2) : json(nullptr)},
          {"records", records}};
}

ChainStats ChainStatsFromCounts(const ChainCounts& counts) {
  const double total = counts.good + counts.type1 + counts.type2 + counts.double_failure;
  if (!(total > 0.0)) throw InvalidArgumentError("chain statistics need at least one record");
  ChainStats s;
  s.good = counts.good / total * 100.0;
  s.type1 = counts.type1 / total * 100.0;
  s.type2 = counts.type2 / total * 100.0;
  s.double_failure = counts.double_failure / total * 100.0;
  if (counts.type1 + counts.double_failure > 0.0) {
    s.r1 = counts.type1 / (counts.type1 + counts.double_failure) * 100.0;
  }
  if (counts.type2 + counts.good > 0.0) {
    s.r2 = counts.type2 / (counts.type2 + counts.good) * 100.0;
  }
  return s;
}

ChainStats ComputeChainStats(std::span<const JudgedCase> cases) {
  ChainCounts counts;
  for (const JudgedCase& c : cases) {
    if (!c.grounding_correct) {
      throw InvalidArgumentError("case " + c.case_id + " lacks grounding_correct");
    }
    switch (ClassifyChain(*c.grounding_correct, c.judge_score >= kQaPassScore)) {
      case ChainOutcome::kGood: counts.good += 1; break;
      case ChainOutcome::kType1: counts.type1 += 1; break;
      case ChainOutcome::kType2: counts.type2 += 1; break;
      case ChainOutcome::kDouble: counts.double_failure += 1; break;
    }
  }
  ChainStats s = ChainStatsFromCounts(counts);
  s.records = static_cast<int64_t>(cases.size());
  return s;
}

std::vector<JudgedCase> ReadJudgedCases(std::istream& in, const std::string& source) {
  std::vector<JudgedCase> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(JudgedCase::FromJson(json::parse(line)));
    } catch (const std::exception& e) {
      throw FormatError(source, "line " + std::to_string(line_no), e.what());
    }
  }
  return out;
}

json EvaluationReport(std::span<const JudgedCase> cases) {
  json report = {{"cases", cases.size()}, {"case_score", CaseScore(cases)}};
  bool any_object = false, all_grounded = !cases.empty();
  for (const JudgedCase& c : cases) {
    any_object = any_object || c.object_id.has_value();
    all_grounded = all_grounded && c.grounding_correct.has_value();
  }
  if (any_object) report["object_score"] = ObjectScore(cases);
  if (all_grounded) report["chain"] = ComputeChainStats(cases).ToJson();
  return report;
}

}  // namespace groundmem
