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

#include "incidentqa/classify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <random>
#include <thread>

#include "incidentqa/csv.hpp"
#include "incidentqa/error.hpp"
#include "incidentqa/prompts.hpp"
#include "incidentqa/text.hpp"

namespace incidentqa {

namespace {

bool token_matches(const std::string& token, const std::string& keyword) {
  if (token == keyword) return true;
  // Plural fold: "airlines" -> "airline", "buses" -> "bus".
  if (token.size() > 1 && token.back() == 's') {
    const std::string_view stem(token.data(), token.size() - 1);
    if (stem == keyword) return true;
    if (stem.size() > 1 && stem.back() == 'e' && stem.substr(0, stem.size() - 1) == keyword) {
      return true;
    }
  }
  return false;
}

bool contains_phrase(const TokenSeq& tokens, const TokenSeq& phrase) {
  if (phrase.empty() || phrase.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
    bool all = true;
    for (std::size_t j = 0; j < phrase.size() && all; ++j) {
      all = token_matches(tokens[i + j], phrase[j]);
    }
    if (all) return true;
  }
  return false;
}

std::string render_actor(const ActorRef& actor) {
  std::string out = actor.name;
  std::vector<std::string> details;
  if (actor.country) details.push_back("country: " + *actor.country);
  if (actor.category) details.push_back("category: " + *actor.category);
  if (!details.empty()) {
    out += " (";
    for (std::size_t i = 0; i < details.size(); ++i) {
      if (i) out += "; ";
      out += details[i];
    }
    out += ")";
  }
  return out;
}

std::string render_incident_block(const IncidentRecord& r) {
  std::string out;
  out += "Attack name: " + r.attack_name + "\n";
  if (r.incident_type) out += "Incident type: " + *r.incident_type + "\n";
  out += "Description: " + r.description + "\n";
  if (r.victim) out += "Victim: " + render_actor(*r.victim) + "\n";
  if (r.attacker) out += "Attacker: " + render_actor(*r.attacker) + "\n";
  if (r.motive) out += "Motive: " + *r.motive + "\n";
  return out;
}

std::string render_guidelines(const GuidelineRules& rules) {
  std::string out;
  for (const auto& entry : rules.entries()) {
    out += "- ";
    out += mode_name(entry.mode);
    out += ": ";
    for (std::size_t i = 0; i < entry.keywords.size(); ++i) {
      if (i) out += ", ";
      out += entry.keywords[i];
    }
    out += "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

// Unbiased draw in [0, bound) from a 64-bit engine.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return x % bound;
}

std::map<RecordKey, const ClassifierVerdict*> index_verdicts(std::span<const ClassifierVerdict> verdicts) {
  std::map<RecordKey, const ClassifierVerdict*> by_key;
  for (const auto& v : verdicts) by_key[v.key] = &v;
  return by_key;
}

}  // namespace

std::string_view classifier_name(ClassifierId id) noexcept {
  return id == ClassifierId::Llm ? "llm" : "rules";
}

GuidelineRules::GuidelineRules(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::map<std::string, TransportMode> seen;
  for (const auto& entry : entries_) {
    if (entry.mode == TransportMode::Multimodal || entry.mode == TransportMode::None) {
      throw Error(ErrorCode::InvalidArgument, "guideline entries must target a single mode");
    }
    for (const auto& keyword : entry.keywords) {
      if (keyword.empty() || keyword != text::lowercase(keyword)) {
        throw Error(ErrorCode::InvalidArgument, "guideline keyword '" + keyword + "' is not lowercase");
      }
      const auto [it, inserted] = seen.emplace(keyword, entry.mode);
      if (!inserted && it->second != entry.mode) {
        throw Error(ErrorCode::InvalidArgument, "guideline keyword '" + keyword + "' maps to two modes");
      }
    }
  }
}

const GuidelineRules& GuidelineRules::defaults() {
  static const GuidelineRules kDefaults({
      {TransportMode::Aviation, {"airline", "airport", "aviation", "aircraft", "flight"}},
      {TransportMode::Maritime, {"port", "ship", "vessel", "maritime", "naval", "marine", "ferry"}},
      {TransportMode::Rail, {"rail", "railway", "train", "metro", "transit rail"}},
      {TransportMode::Road,
       {"highway", "automotive", "vehicle", "truck", "bus", "toll", "traffic signal"}},
  });
  return kDefaults;
}

GuidelineRules GuidelineRules::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::InvalidArgument, "guidelines must be an object of mode -> keywords");
  }
  std::vector<Entry> entries;
  for (const auto& [label, keywords] : doc.items()) {
    const auto mode = parse_mode_label(label);
    if (!mode) throw Error(ErrorCode::InvalidArgument, "unknown guideline mode '" + label + "'");
    if (!keywords.is_array()) {
      throw Error(ErrorCode::InvalidArgument, "guideline keywords for '" + label + "' must be an array");
    }
    Entry entry{*mode, {}};
    for (const auto& k : keywords) entry.keywords.push_back(k.get<std::string>());
    entries.push_back(std::move(entry));
  }
  return GuidelineRules(std::move(entries));
}

std::vector<std::pair<TransportMode, std::vector<std::string>>> GuidelineRules::match(
    const TokenSeq& tokens) const {
  std::vector<std::pair<TransportMode, std::vector<std::string>>> out;
  for (const auto& entry : entries_) {
    std::vector<std::string> hits;
    for (const auto& keyword : entry.keywords) {
      if (contains_phrase(tokens, tokenize(keyword))) hits.push_back(keyword);
    }
    if (hits.empty()) continue;
    auto existing = std::find_if(out.begin(), out.end(),
                                 [&](const auto& p) { return p.first == entry.mode; });
    if (existing == out.end()) {
      out.emplace_back(entry.mode, std::move(hits));
    } else {
      existing->second.insert(existing->second.end(), hits.begin(), hits.end());
    }
  }
  return out;
}

std::string build_classification_prompt(const IncidentRecord& record, const GuidelineRules& rules) {
  const std::string guidelines = render_guidelines(rules);
  const std::string incident = render_incident_block(record);
  return prompts::render(prompts::classification(),
                         {{"guidelines", guidelines}, {"incident", incident}});
}

std::optional<TransportMode> parse_classifier_response(std::string_view response) {
  auto s = text::trim(response);
  // Tolerate surrounding quotes/backticks and a trailing period.
  while (!s.empty() && (s.front() == '"' || s.front() == '\'' || s.front() == '`')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == '"' || s.back() == '\'' || s.back() == '`' || s.back() == '.')) {
    s.remove_suffix(1);
  }
  return parse_mode_label(text::trim(s));
}

ClassifierVerdict classify_llm(const IncidentRecord& record, GenerationProvider& provider,
                               const GuidelineRules& rules) {
  const std::string prompt = build_classification_prompt(record, rules);
  std::string response =
      provider.generate({prompt, 0.0, GenerationPurpose::Classification});
  auto label = parse_classifier_response(response);
  if (!label) {
    response = provider.generate(
        {prompt + std::string(prompts::classification_reminder()), 0.0,
         GenerationPurpose::Classification});
    label = parse_classifier_response(response);
  }
  if (!label) {
    throw Error(ErrorCode::UnrecognizedLabel, "classifier returned unrecognized label '" +
                                                  std::string(text::trim(response)) + "' for " +
                                                  record.key().to_string());
  }
  return {record.key(), *label, std::nullopt, ClassifierId::Llm};
}

std::vector<ClassifierVerdict> classify_all_llm(std::span<const IncidentRecord> records,
                                                GenerationProvider& provider,
                                                std::size_t parallelism,
                                                const GuidelineRules& rules) {
  std::vector<ClassifierVerdict> out(records.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mu;

  const auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= records.size()) return;
      try {
        out[i] = classify_llm(records[i], provider, rules);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        failed = true;
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(parallelism, records.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

ClassifierVerdict classify_rules(const IncidentRecord& record, const GuidelineRules& rules) {
  std::string text = record.attack_name + "\n" + record.description;
  if (record.victim) text += "\n" + record.victim->name;
  const auto matches = rules.match(tokenize(text));

  ClassifierVerdict verdict{record.key(), TransportMode::None, std::nullopt, ClassifierId::Rules};
  if (matches.size() == 1) {
    verdict.predicted = matches.front().first;
  } else if (matches.size() >= 2) {
    verdict.predicted = TransportMode::Multimodal;
  }
  if (!matches.empty()) {
    std::string rationale = "matched:";
    for (const auto& [mode, keywords] : matches) {
      for (const auto& k : keywords) {
        rationale += " " + k + "(" + std::string(mode_name(mode)) + ")";
      }
    }
    verdict.rationale = std::move(rationale);
  }
  return verdict;
}

IncidentStore filter_transportation(const IncidentStore& store,
                                    std::span<const ClassifierVerdict> verdicts,
                                    const std::set<std::string>& transportation_only_sources) {
  const auto by_key = index_verdicts(verdicts);
  IncidentStore out;
  for (const auto& [key, record] : store) {
    if (transportation_only_sources.contains(record.source_dataset) &&
        record.transportation_mode != TransportMode::None) {
      out.insert(record);
      continue;
    }
    const auto it = by_key.find(key);
    if (it == by_key.end()) {
      throw Error(ErrorCode::MissingVerdict, "no verdict for " + key.to_string());
    }
    if (it->second->predicted == TransportMode::None) continue;
    IncidentRecord relabeled = record;
    relabeled.transportation_mode = it->second->predicted;
    out.insert(std::move(relabeled));
  }
  out.seal();
  return out;
}

IncidentStore apply_verdicts(const IncidentStore& store, std::span<const ClassifierVerdict> verdicts) {
  const auto by_key = index_verdicts(verdicts);
  IncidentStore out;
  for (const auto& [key, record] : store) {
    IncidentRecord copy = record;
    if (const auto it = by_key.find(key); it != by_key.end()) {
      copy.transportation_mode = it->second->predicted;
    }
    out.insert(std::move(copy));
  }
  out.seal();
  return out;
}

std::vector<IncidentRecord> sample_eval_set(const IncidentStore& store, std::uint64_t seed,
                                            std::size_t per_cell) {
  std::map<std::string, std::map<TransportMode, std::vector<const IncidentRecord*>>> cells;
  for (const auto& [key, record] : store) {
    cells[record.source_dataset][record.transportation_mode].push_back(&record);
  }
  std::mt19937_64 rng(seed);
  std::vector<IncidentRecord> sample;
  for (auto& [source, by_mode] : cells) {
    for (const TransportMode mode : kAllModes) {
      auto it = by_mode.find(mode);
      if (it == by_mode.end()) continue;
      auto& candidates = it->second;
      const std::size_t take = std::min(per_cell, candidates.size());
      if (candidates.size() > per_cell) {
        // Partial Fisher-Yates: the first `take` slots become the draw.
        for (std::size_t i = 0; i < take; ++i) {
          const std::size_t j = i + bounded(rng, candidates.size() - i);
          std::swap(candidates[i], candidates[j]);
        }
      }
      for (std::size_t i = 0; i < take; ++i) sample.push_back(*candidates[i]);
    }
  }
  return sample;
}

ClassificationScore score_classification(std::span<const ClassifierVerdict> predictions,
                                         std::span<const GoldLabel> gold) {
  const auto by_key = index_verdicts(predictions);
  if (by_key.size() != predictions.size()) {
    throw Error(ErrorCode::KeyMismatch, "duplicate keys among predictions");
  }
  if (predictions.size() != gold.size()) {
    throw Error(ErrorCode::KeyMismatch, "predictions and gold differ in size");
  }
  ClassificationScore score;
  for (const auto& g : gold) {
    const auto it = by_key.find(g.key);
    if (it == by_key.end()) {
      throw Error(ErrorCode::KeyMismatch, "no prediction for " + g.key.to_string());
    }
    const TransportMode predicted = it->second->predicted;
    ++score.total;
    if (predicted == g.mode) {
      ++score.correct;
      continue;
    }
    ++score.incorrect;
    if (g.mode == TransportMode::Multimodal &&
        std::find(g.constituents.begin(), g.constituents.end(), predicted) != g.constituents.end()) {
      ++score.partial;
    }
    if (g.mode != TransportMode::None && predicted == TransportMode::None) ++score.false_nulls;
  }
  score.accuracy = score.total ? static_cast<double>(score.correct) / static_cast<double>(score.total) : 0.0;
  return score;
}

std::string verdicts_to_csv(std::span<const ClassifierVerdict> verdicts) {
  std::string out = csv::format_row({"key", "predicted", "classifier_id", "rationale"});
  for (const auto& v : verdicts) {
    out += csv::format_row({v.key.to_string(), std::string(mode_name(v.predicted)),
                            std::string(classifier_name(v.classifier_id)), v.rationale.value_or("")});
  }
  return out;
}

std::vector<ClassifierVerdict> verdicts_from_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty() || rows.front().size() < 3 || rows.front()[0] != "key") {
    throw Error(ErrorCode::MalformedDocument, "verdict file must start with a key,predicted,classifier_id header");
  }
  std::vector<ClassifierVerdict> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() < 3) {
      throw Error(ErrorCode::MalformedDocument, "verdict row " + std::to_string(i) + " is short");
    }
    const auto mode = parse_mode_label(row[1]);
    if (!mode) throw Error(ErrorCode::MalformedDocument, "unknown label '" + row[1] + "'");
    ClassifierVerdict v;
    v.key = RecordKey::parse(row[0]);
    v.predicted = *mode;
    v.classifier_id = row[2] == "llm" ? ClassifierId::Llm : ClassifierId::Rules;
    if (row.size() > 3 && !row[3].empty()) v.rationale = row[3];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace incidentqa
