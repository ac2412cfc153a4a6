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
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "incidentqa/incident.hpp"
#include "incidentqa/providers.hpp"
#include "incidentqa/tokenize.hpp"

namespace incidentqa {

enum class ClassifierId { Llm, Rules };

std::string_view classifier_name(ClassifierId id) noexcept;

struct ClassifierVerdict {
  RecordKey key;
  TransportMode predicted = TransportMode::None;
  std::optional<std::string> rationale;
  ClassifierId classifier_id = ClassifierId::Rules;

  bool operator==(const ClassifierVerdict&) const = default;
};

/// Keyword guidelines mapping domain terms to a single mode. A keyword may
/// span several words ("transit rail"); matching is token based.
class GuidelineRules {
 public:
  struct Entry {
    TransportMode mode;
    std::vector<std::string> keywords;
  };

  /// Throws InvalidArgument when a keyword is not lowercase, maps to two
  /// modes, or an entry targets Multimodal/None.
  explicit GuidelineRules(std::vector<Entry> entries);

  static const GuidelineRules& defaults();

  /// {"Aviation": ["airline", ...], ...}
  static GuidelineRules from_json(const nlohmann::json& doc);

  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Distinct modes reached at least once, in entry order, with the matched
  /// keywords.
  std::vector<std::pair<TransportMode, std::vector<std::string>>> match(
      const TokenSeq& tokens) const;

 private:
  std::vector<Entry> entries_;
};

/// Single-turn prompt naming the five categories, the guideline table and
/// the null instruction, followed by the record's key fields.
std::string build_classification_prompt(const IncidentRecord& record,
                                        const GuidelineRules& rules = GuidelineRules::defaults());

/// Parses a model response into a label; nullopt for anything that is not
/// exactly one of the six labels (case-insensitive) or "null".
std::optional<TransportMode> parse_classifier_response(std::string_view response);

/// Temperature 0, one re-ask on an unrecognized label, then UnrecognizedLabel.
ClassifierVerdict classify_llm(const IncidentRecord& record, GenerationProvider& provider,
                               const GuidelineRules& rules = GuidelineRules::defaults());

/// Runs classify_llm over `records` with at most `parallelism` requests in
/// flight. Output order follows input order.
std::vector<ClassifierVerdict> classify_all_llm(std::span<const IncidentRecord> records,
                                                GenerationProvider& provider,
                                                std::size_t parallelism = 4,
                                                const GuidelineRules& rules = GuidelineRules::defaults());

/// Keyword oracle over attack_name, description and victim name.
ClassifierVerdict classify_rules(const IncidentRecord& record,
                                 const GuidelineRules& rules = GuidelineRules::defaults());

/// Sub-store of records predicted as transportation-related, each relabeled
/// with its verdict. Records whose source is listed in
/// `transportation_only_sources` and that already carry a mode bypass the
/// filter unchanged.
IncidentStore filter_transportation(const IncidentStore& store,
                                    std::span<const ClassifierVerdict> verdicts,
                                    const std::set<std::string>& transportation_only_sources = {});

/// Copy of `store` with every verdict's label applied; nothing is dropped.
IncidentStore apply_verdicts(const IncidentStore& store,
                             std::span<const ClassifierVerdict> verdicts);

/// Up to `per_cell` records per (source, label) cell, drawn with a seeded
/// generator over the store's key order. Cells are visited by ascending
/// source, then labels in kAllModes order.
std::vector<IncidentRecord> sample_eval_set(const IncidentStore& store, std::uint64_t seed,
                                            std::size_t per_cell = 5);

struct GoldLabel {
  RecordKey key;
  TransportMode mode = TransportMode::None;
  /// Constituent modes when `mode` is Multimodal.
  std::vector<TransportMode> constituents;
};

struct ClassificationScore {
  std::size_t total = 0;
  std::size_t correct = 0;
  /// Subset of `incorrect`: gold Multimodal, predicted one constituent.
  std::size_t partial = 0;
  std::size_t incorrect = 0;
  /// Subset of `incorrect`: gold is a mode, predicted None.
  std::size_t false_nulls = 0;
  double accuracy = 0.0;
};

/// Throws KeyMismatch unless predictions and gold cover the same keys.
ClassificationScore score_classification(std::span<const ClassifierVerdict> predictions,
                                         std::span<const GoldLabel> gold);

/// Delimited report: header "key,predicted,classifier_id,rationale".
std::string verdicts_to_csv(std::span<const ClassifierVerdict> verdicts);
std::vector<ClassifierVerdict> verdicts_from_csv(std::string_view csv);

}  // namespace incidentqa
