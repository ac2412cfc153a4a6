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

#include <random>

#include "incidentqa/chunk.hpp"
#include "incidentqa/error.hpp"
#include "test_support.hpp"

namespace incidentqa {
namespace {

std::string words(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += "t" + std::to_string(i) + " ";
  return s;
}

TEST(Chunk, WindowArithmetic) {
  const auto one = plan_windows(768, 768, 100);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].length, 768u);
  const auto two = plan_windows(868, 768, 100);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].start, 0u);
  EXPECT_EQ(two[1].start, 668u);
  EXPECT_EQ(two[1].length, 200u);
  EXPECT_TRUE(plan_windows(0, 768, 100).empty());
  EXPECT_EQ(plan_windows(5, 768, 100).size(), 1u);
}

TEST(Chunk, InvalidParams) {
  for (const auto& [size, overlap] : std::vector<std::pair<std::size_t, std::size_t>>{{100, 100}, {100, 150}, {0, 0}}) {
    try {
      plan_windows(10, size, overlap);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
    }
  }
}

TEST(Chunk, DocumentTextMatchesTokens) {
  const auto chunks = chunk_document(words(868), {{"s", "1"}}, 768, 100, 7);
  ASSERT_EQ(chunks.size(), 2u);
  EXPECT_EQ(chunks[0].chunk_id, 7u);
  EXPECT_EQ(chunks[1].chunk_id, 8u);
  EXPECT_EQ(tokenize(chunks[1].text).size(), 200u);
  EXPECT_EQ(tokenize(chunks[1].text).front(), "t668");
}

// Consecutive windows share exactly `overlap` tokens and together cover the
// document without gaps.
TEST(ChunkProperty, OverlapConservation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 3000;
    const std::size_t size = 2 + rng() % 800;
    const std::size_t overlap = rng() % size;
    const auto w = plan_windows(n, size, overlap);
    ASSERT_FALSE(w.empty());
    EXPECT_EQ(w.front().start, 0u);
    EXPECT_EQ(w.back().start + w.back().length, n);
    for (std::size_t i = 0; i < w.size(); ++i) {
      EXPECT_LE(w[i].length, size);
      if (i + 1 < w.size()) {
        EXPECT_EQ(w[i].length, size);
        EXPECT_EQ(w[i].start + w[i].length - w[i + 1].start, overlap);
      }
    }
  }
}

TEST(Chunk, RenderSkipsNulls) {
  auto r = testing::make_record("s", "1", "Port outage", "Systems down.");
  r.victim = ActorRef{"Harbor Co", "Norland", std::nullopt};
  r.transportation_mode = TransportMode::Maritime;
  EXPECT_EQ(render_record_text(r),
            "attack_name: Port outage\ndescription: Systems down.\nvictim: Harbor Co (Norland)\n"
            "Transportation_mode: Maritime\n");
}

TEST(Chunk, CorpusIdsDenseAndPerRecord) {
  IncidentStore store;
  store.insert(testing::make_record("s", "1", "a", words(50)));
  store.insert(testing::make_record("s", "2", "b", "short"));
  const auto chunks = chunk_corpus(store, 20, 5);
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    EXPECT_EQ(chunks[i].chunk_id, i);
    EXPECT_EQ(chunks[i].record_keys.size(), 1u);
  }
  EXPECT_EQ(chunks.back().record_keys[0], (RecordKey{"s", "2"}));
}

}  // namespace
}  // namespace incidentqa
