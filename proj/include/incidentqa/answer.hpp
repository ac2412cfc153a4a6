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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "incidentqa/index.hpp"
#include "incidentqa/providers.hpp"
#include "incidentqa/retrieve.hpp"

namespace incidentqa {

inline constexpr std::size_t kDefaultContextBudget = 6000;

struct ContextPassage {
  std::uint32_t chunk_id = 0;
  std::string text;
  std::size_t token_count = 0;
  std::vector<RecordKey> record_keys;
};

struct ContextBatch {
  std::vector<ContextPassage> passages;
  std::size_t total_tokens = 0;
};

/// Greedy fill in rank order; nothing is split or dropped. Throws
/// ChunkExceedsBudget when one passage alone is over budget.
std::vector<ContextBatch> assemble_batches(std::span<const ContextPassage> ranked, std::size_t budget);

/// Passages for retrieved chunks, in the given order.
std::vector<ContextPassage> passages_for(std::span<const ScoredChunk> retrieved,
                                         const KnowledgeBase& kb);

std::string build_qa_prompt(std::string_view question, const ContextBatch& batch);
std::string build_consolidation_prompt(std::string_view question,
                                       std::span<const std::string> drafts);

struct AnswerConfig {
  RetrievalConfig retrieval;
  std::size_t context_budget = kDefaultContextBudget;
};

struct AnswerResult {
  std::string question;
  std::string answer;
  /// Sorted, unique.
  std::vector<RecordKey> cited;
  std::size_t batch_count = 0;
  std::string provider_id;
  std::size_t generation_calls = 0;
  std::vector<ScoredChunk> retrieved;
};

/// Retrieve, batch, one temperature-0 generation per batch, and one extra
/// consolidation call when there is more than one batch. Throws
/// EmptyRetrieval, ProviderUnavailable, InvalidParams.
AnswerResult generate_answer(std::string_view question, const AnswerConfig& cfg,
                             const KnowledgeBase& kb, EmbeddingProvider& embedder,
                             GenerationProvider& generator);

}  // namespace incidentqa
