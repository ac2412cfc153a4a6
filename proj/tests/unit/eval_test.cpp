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

#include <filesystem>
#include <random>

#include "incidentqa/csv.hpp"
#include "incidentqa/error.hpp"
#include "incidentqa/eval.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace incidentqa {
namespace {

TEST(Rouge, HandComputedPair) {
  const std::string cand = "the port attacked", ref = "the port was attacked";
  const auto r1 = rouge_n(cand, ref, 1);
  EXPECT_NEAR(r1.precision, 1.0, 1e-12);
  EXPECT_NEAR(r1.recall, 0.75, 1e-12);
  EXPECT_NEAR(r1.f1, 6.0 / 7.0, 1e-9);
  const auto r2 = rouge_n(cand, ref, 2);
  EXPECT_NEAR(r2.precision, 0.5, 1e-12);
  EXPECT_NEAR(r2.recall, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r2.f1, 0.4, 1e-9);
  const auto rl = rouge_l(cand, ref);
  EXPECT_NEAR(rl.f1, 6.0 / 7.0, 1e-9);
  const auto tok = token_metrics(cand, ref);
  EXPECT_NEAR(tok.precision, 1.0, 1e-12);
  EXPECT_NEAR(tok.recall, 0.75, 1e-12);
  EXPECT_NEAR(tok.accuracy, 0.75, 1e-12);
}

TEST(Rouge, ClippedCountsAndEdges) {
  const auto r = rouge_n("the the the", "the cat", 1);
  EXPECT_NEAR(r.precision, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.recall, 0.5, 1e-12);
  const auto empty = rouge_n("", "the cat", 1);
  EXPECT_EQ(empty.f1, 0.0);
  EXPECT_EQ(rouge_n("a", "a", 2).f1, 0.0);
  EXPECT_THROW(rouge_n("a", "a", 0), Error);
  EXPECT_EQ(f1_of(0, 0), 0.0);
  EXPECT_EQ(rouge_l("", "").f1, 0.0);
  EXPECT_EQ(token_metrics("", "").accuracy, 0.0);
}

TEST(LcsProperty, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(31);
  const std::vector<std::string> vocab = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 2000; ++trial) {
    TokenSeq a(rng() % 13), b(rng() % 13);
    for (auto& t : a) t = vocab[rng() % vocab.size()];
    for (auto& t : b) t = vocab[rng() % vocab.size()];
    ASSERT_EQ(lcs_length(a, b), oracle::lcs_exhaustive(a, b));
  }
}

TEST(MetricsProperty, BoundsAndSymmetry) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = testing::random_text(rng, 30, 15);
    const auto y = testing::random_text(rng, 30, 15);
    const auto s = score_answer(x, y);
    for (const PRF* p : {&s.rouge1, &s.rouge2, &s.rougeL}) {
      EXPECT_GE(p->f1, 0.0);
      EXPECT_LE(p->f1, 1.0);
      EXPECT_LE(p->f1, std::max(p->precision, p->recall) + 1e-12);
    }
    EXPECT_LE(s.tokens.accuracy, std::min(s.tokens.precision, s.tokens.recall) + 1e-12);
    const auto t = score_answer(y, x);
    EXPECT_NEAR(s.rouge1.f1, t.rouge1.f1, 1e-12);
    EXPECT_NEAR(s.rougeL.f1, t.rougeL.f1, 1e-12);
    EXPECT_NEAR(s.rouge1.precision, t.rouge1.recall, 1e-12);
    const auto same = score_answer(x, x);
    EXPECT_NEAR(same.rouge1.f1, 1.0, 1e-12);
    EXPECT_NEAR(same.rougeL.f1, 1.0, 1e-12);
    EXPECT_NEAR(same.tokens.accuracy, 1.0, 1e-12);
  }
}

TEST(Testset, CsvAndJson) {
  const auto csv_items = parse_testset(
      "question,reference,record_keys\n"
      "\"Who, exactly?\",A ref,src:1;src:2\n"
      "Plain,Other,\n");
  ASSERT_EQ(csv_items.size(), 2u);
  EXPECT_EQ(csv_items[0].question, "Who, exactly?");
  ASSERT_EQ(csv_items[0].record_keys.size(), 2u);
  EXPECT_EQ(csv_items[0].record_keys[1], (RecordKey{"src", "2"}));
  EXPECT_TRUE(csv_items[1].record_keys.empty());

  const auto json_items = parse_testset(R"([{"question": "Q", "reference": "R", "record_keys": ["a:1"]}])");
  ASSERT_EQ(json_items.size(), 1u);
  EXPECT_EQ(json_items[0].record_keys[0], (RecordKey{"a", "1"}));

  EXPECT_THROW(parse_testset("reference\nonly\n"), Error);
  EXPECT_THROW(parse_testset(""), Error);
  EXPECT_THROW(parse_testset("[{\"question\": 1}]"), Error);
}

TEST(Testset, FixtureHasFiftyItems) {
  const auto items = load_testset(std::string(testing::fixture_dir()) + "/testset_50.csv");
  EXPECT_EQ(items.size(), 50u);
  for (const auto& it : items) {
    EXPECT_FALSE(it.question.empty());
    EXPECT_EQ(it.record_keys.size(), 1u);
  }
}

TEST(RunEval, EchoAndEmptySystems) {
  const auto items = load_testset(std::string(testing::fixture_dir()) + "/testset_50.csv");
  const auto echo = run_eval(items, [](const TestItem& t) { return t.reference; }, 4);
  EXPECT_EQ(echo.scored, 50u);
  EXPECT_EQ(echo.failed, 0u);
  EXPECT_NEAR(echo.average.rouge1.f1, 1.0, 1e-12);
  EXPECT_NEAR(echo.average.rougeL.f1, 1.0, 1e-12);
  EXPECT_NEAR(echo.average.tokens.accuracy, 1.0, 1e-12);
  for (std::size_t i = 0; i < echo.items.size(); ++i) EXPECT_EQ(echo.items[i].index, i);

  const auto empty = run_eval(items, [](const TestItem&) { return std::string(); });
  EXPECT_EQ(empty.average.rouge1.f1, 0.0);
  EXPECT_EQ(empty.average.tokens.precision, 0.0);

  const auto rows = csv::parse(echo.to_csv());
  ASSERT_GE(rows.size(), 51u);
  EXPECT_EQ(rows[0].size(), 17u);
  EXPECT_EQ(rows[1][0], "1");
  const auto doc = echo.to_json();
  EXPECT_EQ(doc["series"]["rouge1_f1"].size(), 50u);
  EXPECT_DOUBLE_EQ(doc["averages"]["rouge1_f1"].get<double>(), 1.0);
}

TEST(RunEval, FailuresAreExcludedFromAverages) {
  std::vector<TestItem> items(4);
  for (std::size_t i = 0; i < items.size(); ++i) {
    items[i].question = "q" + std::to_string(i);
    items[i].reference = "the port was attacked";
  }
  const auto report = run_eval(items, [](const TestItem& t) -> std::string {
    if (t.question == "q1" || t.question == "q3") throw Error(ErrorCode::ProviderUnavailable, "down");
    return t.reference;
  });
  EXPECT_EQ(report.scored, 2u);
  EXPECT_EQ(report.failed, 2u);
  EXPECT_TRUE(report.items[1].failed);
  EXPECT_NE(report.items[1].error.find("down"), std::string::npos);
  EXPECT_NEAR(report.average.rouge1.f1, 1.0, 1e-12);
  EXPECT_TRUE(report.to_json()["series"]["rouge1_f1"][1].is_null());
  EXPECT_THROW(run_eval({}, [](const TestItem&) { return std::string(); }), Error);
}

}  // namespace
}  // namespace incidentqa
