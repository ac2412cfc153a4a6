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

#include <gtest/gtest.h>

#include "incidentqa/classify.hpp"
#include "incidentqa/error.hpp"
#include "test_support.hpp"

namespace incidentqa {
namespace {

IncidentRecord airline() {
  auto r = parse_record(testing::kAirlineDocument);
  r.source_dataset = "csis";
  r.source_row_id = "1";
  r.transportation_mode = TransportMode::None;
  return r;
}

TEST(ClassifyPrompt, NamesCategoriesAndRecord) {
  const std::string p = build_classification_prompt(airline());
  for (const char* s : {"United Airlines", "Road", "Rail", "Maritime", "Aviation", "Multimodal", "null"}) {
    EXPECT_NE(p.find(s), std::string::npos) << s;
  }
  EXPECT_EQ(p, build_classification_prompt(airline()));
  auto no_attacker = airline();
  no_attacker.attacker.reset();
  const std::string q = build_classification_prompt(no_attacker);
  EXPECT_EQ(q.find("Chinese hackers (China"), std::string::npos);
  EXPECT_EQ(q.find("{{"), std::string::npos);
}

TEST(ClassifyLlm, LabelsAndReask) {
  ScriptedGenerator aviation({"Aviation"});
  EXPECT_EQ(classify_llm(airline(), aviation).predicted, TransportMode::Aviation);
  EXPECT_EQ(aviation.requests().at(0).temperature, 0.0);

  ScriptedGenerator null_gen({"null"});
  EXPECT_EQ(classify_llm(testing::make_record("s", "1", "Hospital billing", "breach"), null_gen).predicted,
            TransportMode::None);

  ScriptedGenerator second_try({"Spacecraft", "\"Rail.\""});
  EXPECT_EQ(classify_llm(airline(), second_try).predicted, TransportMode::Rail);
  EXPECT_EQ(second_try.requests().size(), 2u);

  ScriptedGenerator bad({"Spacecraft", "Spacecraft"});
  try {
    classify_llm(airline(), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnrecognizedLabel);
  }
}

TEST(ClassifyLlm, ParallelKeepsInputOrder) {
  std::vector<IncidentRecord> records;
  for (int i = 0; i < 12; ++i) {
    records.push_back(testing::make_record("s", std::to_string(100 + i), "a", i % 2 ? "ship port" : "clinic"));
  }
  StubGenerator stub;
  const auto verdicts = classify_all_llm(records, stub, 4);
  ASSERT_EQ(verdicts.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(verdicts[i].key, records[i].key());
    EXPECT_EQ(verdicts[i].predicted, i % 2 ? TransportMode::Maritime : TransportMode::None);
  }
}

TEST(ClassifyRules, KeywordMapping) {
  EXPECT_EQ(classify_rules(testing::make_record("s", "1", "x", "ransomware hit the railway operator")).predicted,
            TransportMode::Rail);
  EXPECT_EQ(classify_rules(testing::make_record("s", "1", "x", "the airport and port authority vessels")).predicted,
            TransportMode::Multimodal);
  EXPECT_EQ(classify_rules(testing::make_record("s", "1", "x", "hospital billing system breached")).predicted,
            TransportMode::None);
  const auto v = classify_rules(testing::make_record("s", "1", "Naval Air Weapons Program", "data theft"));
  EXPECT_EQ(v.predicted, TransportMode::Maritime);
  ASSERT_TRUE(v.rationale);
  EXPECT_NE(v.rationale->find("naval"), std::string::npos);
  EXPECT_EQ(classify_rules(testing::make_record("s", "1", "x", "passport office")).predicted, TransportMode::None);
}

TEST(ClassifyRules, CustomGuidelines) {
  const auto rules = GuidelineRules::from_json(nlohmann::json::parse(R"({"Aviation": ["drone"]})"));
  EXPECT_EQ(classify_rules(testing::make_record("s", "1", "x", "drones grounded"), rules).predicted,
            TransportMode::Aviation);
  EXPECT_THROW(GuidelineRules::from_json(nlohmann::json::parse(R"({"Multimodal": ["x"]})")), Error);
  EXPECT_THROW(GuidelineRules::from_json(nlohmann::json::parse(R"({"Rail": ["Train"]})")), Error);
  EXPECT_THROW(GuidelineRules::from_json(nlohmann::json::parse(R"({"Rail": ["x"], "Road": ["x"]})")), Error);
}

TEST(Filter, RetainsTransportRecords) {
  IncidentStore store;
  std::vector<ClassifierVerdict> verdicts;
  for (int i = 0; i < 10; ++i) {
    auto r = testing::make_record("csis", std::to_string(i), "a", "d");
    verdicts.push_back({r.key(), i < 4 ? TransportMode::None : TransportMode::Road, std::nullopt, ClassifierId::Rules});
    store.insert(r);
  }
  const auto kept = filter_transportation(store, verdicts);
  EXPECT_EQ(kept.size(), 6u);
  for (const auto& [k, r] : kept) EXPECT_EQ(r.transportation_mode, TransportMode::Road);
}

TEST(Filter, TransportOnlySourcesBypass) {
  IncidentStore store;
  auto tracr = testing::make_record("tracr", "1", "a", "d");
  tracr.transportation_mode = TransportMode::Maritime;
  store.insert(tracr);
  auto unlabeled = testing::make_record("tracr", "2", "a", "d");
  store.insert(unlabeled);
  store.insert(testing::make_record("csis", "1", "a", "d"));
  const std::vector<ClassifierVerdict> verdicts = {
      {unlabeled.key(), TransportMode::Rail, std::nullopt, ClassifierId::Rules},
      {{"csis", "1"}, TransportMode::None, std::nullopt, ClassifierId::Rules}};
  const auto kept = filter_transportation(store, verdicts, {"tracr"});
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(*kept.find(tracr.key()), tracr);
  EXPECT_EQ(kept.find(unlabeled.key())->transportation_mode, TransportMode::Rail);

  try {
    filter_transportation(store, {}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingVerdict);
  }
}

IncidentStore sampler_store(std::size_t per_cell, std::size_t short_cell = 0) {
  IncidentStore store;
  int id = 0;
  for (const char* source : {"csis", "eurepoc", "umced"}) {
    for (const auto mode : kAllModes) {
      const std::size_t n = (short_cell && mode == TransportMode::Road && std::string(source) == "csis")
                                ? short_cell
                                : per_cell;
      for (std::size_t i = 0; i < n; ++i) {
        auto r = testing::make_record(source, std::to_string(id++), "a", "d");
        r.transportation_mode = mode;
        store.insert(r);
      }
    }
  }
  store.seal();
  return store;
}

TEST(Sampler, NinetyAndDeterministic) {
  const auto store = sampler_store(9);
  const auto a = sample_eval_set(store, 42);
  const auto b = sample_eval_set(store, 42);
  EXPECT_EQ(a.size(), 90u);
  EXPECT_EQ(a, b);
  EXPECT_NE(sample_eval_set(store, 43), a);
}

TEST(Sampler, ExhaustedCell) {
  const auto sample = sample_eval_set(sampler_store(6, 3), 1);
  std::size_t road_csis = 0;
  for (const auto& r : sample) {
    road_csis += r.source_dataset == "csis" && r.transportation_mode == TransportMode::Road;
  }
  EXPECT_EQ(road_csis, 3u);
  EXPECT_EQ(sample.size(), 88u);
}

TEST(Score, PartialAndAccuracy) {
  std::vector<ClassifierVerdict> pred;
  std::vector<GoldLabel> gold;
  pred.push_back({{"s", "1"}, TransportMode::Rail, std::nullopt, ClassifierId::Llm});
  gold.push_back({{"s", "1"}, TransportMode::Multimodal, {TransportMode::Road, TransportMode::Rail}});
  pred.push_back({{"s", "2"}, TransportMode::None, std::nullopt, ClassifierId::Llm});
  gold.push_back({{"s", "2"}, TransportMode::Aviation, {}});
  pred.push_back({{"s", "3"}, TransportMode::Road, std::nullopt, ClassifierId::Llm});
  gold.push_back({{"s", "3"}, TransportMode::Road, {}});
  const auto s = score_classification(pred, gold);
  EXPECT_EQ(s.total, 3u);
  EXPECT_EQ(s.correct, 1u);
  EXPECT_EQ(s.partial, 1u);
  EXPECT_EQ(s.incorrect, 2u);
  EXPECT_EQ(s.false_nulls, 1u);
  EXPECT_NEAR(s.accuracy, 1.0 / 3.0, 1e-12);

  const auto perfect = score_classification(std::span(pred).subspan(2), std::span(gold).subspan(2));
  EXPECT_EQ(perfect.accuracy, 1.0);
  EXPECT_EQ(perfect.partial, 0u);

  try {
    score_classification(std::span(pred).subspan(1), std::span(gold).first(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KeyMismatch);
  }
}

TEST(Verdicts, CsvRoundTrip) {
  const std::vector<ClassifierVerdict> v = {
      {{"csis", "1"}, TransportMode::Multimodal, "matched: port(Maritime), train(Rail)", ClassifierId::Rules},
      {{"csis", "2"}, TransportMode::None, std::nullopt, ClassifierId::Llm}};
  EXPECT_EQ(verdicts_from_csv(verdicts_to_csv(v)), v);
}

}  // namespace
}  // namespace incidentqa
