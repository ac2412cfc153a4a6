// Copyright 2026 The incidentqa Authors.
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

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "incidentqa/incident.hpp"
#include "incidentqa/tokenize.hpp"

namespace incidentqa {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Harmonic mean; 0 when both are 0.
double f1_of(double precision, double recall);

/// Clipped n-gram overlap. Throws InvalidArgument unless n >= 1.
PRF rouge_n(const TokenSeq& candidate, const TokenSeq& reference, std::size_t n);
PRF rouge_n(std::string_view candidate, std::string_view reference, std::size_t n);

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);
PRF rouge_l(const TokenSeq& candidate, const TokenSeq& reference);
PRF rouge_l(std::string_view candidate, std::string_view reference);

struct TokenScores {
  double precision = 0.0;
  double recall = 0.0;
  double accuracy = 0.0;
};

/// Over unique-token sets; empty denominators give 0.
TokenScores token_metrics(const TokenSeq& candidate, const TokenSeq& reference);
TokenScores token_metrics(std::string_view candidate, std::string_view reference);

struct TestItem {
  std::string question;
  std::string reference;
  std::vector<RecordKey> record_keys;
};

/// CSV with columns question,reference[,record_keys] (keys separated by
/// ';'), or a JSON array of objects with the same names. Throws
/// MalformedDocument, MissingRequiredField, EmptyInput.
std::vector<TestItem> parse_testset(std::string_view text);
std::vector<TestItem> load_testset(const std::string& path);

struct ItemScores {
  PRF rouge1;
  PRF rouge2;
  PRF rougeL;
  TokenScores tokens;
};

ItemScores score_answer(std::string_view candidate, std::string_view reference);

struct ItemResult {
  std::size_t index = 0;
  std::string question;
  std::string reference;
  std::string answer;
  bool failed = false;
  std::string error;
  ItemScores scores;
};

struct MetricReport {
  std::vector<ItemResult> items;
  /// Means over non-failed items.
  ItemScores average;
  std::size_t scored = 0;
  std::size_t failed = 0;

  /// Per-item table followed by a blank line and a summary block.
  std::string to_csv() const;
  /// Plot-ready series: one array per headline metric plus the averages.
  nlohmann::ordered_json to_json() const;
};

using AnswerFn = std::function<std::string(const TestItem&)>;

/// Runs every item through `system`. An exception from `system` marks the
/// item failed. Throws EmptyInput for an empty test set.
MetricReport run_eval(const std::vector<TestItem>& testset, const AnswerFn& system,
                      std::size_t parallelism = 1);

}  // namespace incidentqa
