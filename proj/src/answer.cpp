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

#include "incidentqa/answer.hpp"

#include <algorithm>

#include "incidentqa/error.hpp"
#include "incidentqa/prompts.hpp"
#include "incidentqa/text.hpp"

namespace incidentqa {

using text::trim;

std::vector<ContextBatch> assemble_batches(std::span<const ContextPassage> ranked, std::size_t budget) {
  std::vector<ContextBatch> batches;
  for (const auto& p : ranked) {
    if (p.token_count > budget) {
      throw Error(ErrorCode::ChunkExceedsBudget, "chunk " + std::to_string(p.chunk_id) + " has " +
                                                     std::to_string(p.token_count) +
                                                     " tokens, over the context budget of " +
                                                     std::to_string(budget));
    }
    if (batches.empty() || batches.back().total_tokens + p.token_count > budget) {
      batches.emplace_back();
    }
    batches.back().passages.push_back(p);
    batches.back().total_tokens += p.token_count;
  }
  return batches;
}

std::vector<ContextPassage> passages_for(std::span<const ScoredChunk> retrieved,
                                         const KnowledgeBase& kb) {
  std::vector<ContextPassage> out;
  out.reserve(retrieved.size());
  for (const auto& s : retrieved) {
    if (s.chunk_id >= kb.chunks.size()) {
      throw Error(ErrorCode::UnknownChunk, "chunk " + std::to_string(s.chunk_id) + " is not indexed");
    }
    const Chunk& c = kb.chunks[s.chunk_id];
    out.push_back({c.chunk_id, c.text, c.token_count, c.record_keys});
  }
  return out;
}

std::string build_qa_prompt(std::string_view question, const ContextBatch& batch) {
  std::string context;
  for (std::size_t i = 0; i < batch.passages.size(); ++i) {
    if (i) context += "\n---\n";
    context += trim(batch.passages[i].text);
  }
  return prompts::render(prompts::qa(), {{"context", context}, {"question", trim(question)}});
}

std::string build_consolidation_prompt(std::string_view question,
                                       std::span<const std::string> drafts) {
  std::string joined;
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    if (i) joined += "\n---\n";
    joined += trim(drafts[i]);
  }
  return prompts::render(prompts::consolidation(), {{"drafts", joined}, {"question", trim(question)}});
}

AnswerResult generate_answer(std::string_view question, const AnswerConfig& cfg,
                             const KnowledgeBase& kb, EmbeddingProvider& embedder,
                             GenerationProvider& generator) {
  if (trim(question).empty()) throw Error(ErrorCode::InvalidArgument, "question is empty");
  AnswerResult result;
  result.question = std::string(question);
  result.provider_id = generator.id();
  result.retrieved = retrieve(question, cfg.retrieval, kb, embedder);

  const auto passages = passages_for(result.retrieved, kb);
  const auto batches = assemble_batches(passages, cfg.context_budget);
  if (batches.empty()) throw Error(ErrorCode::EmptyRetrieval, "no chunk matched the query");
  result.batch_count = batches.size();

  std::vector<std::string> drafts;
  for (const auto& batch : batches) {
    drafts.push_back(generator.generate({build_qa_prompt(question, batch), 0.0, GenerationPurpose::Answer}));
    ++result.generation_calls;
    for (const auto& p : batch.passages) {
      result.cited.insert(result.cited.end(), p.record_keys.begin(), p.record_keys.end());
    }
  }
  if (drafts.size() == 1) {
    result.answer = trim(drafts.front());
  } else {
    result.answer = trim(generator.generate(
        {build_consolidation_prompt(question, drafts), 0.0, GenerationPurpose::Consolidation}));
    ++result.generation_calls;
  }
  std::sort(result.cited.begin(), result.cited.end());
  result.cited.erase(std::unique(result.cited.begin(), result.cited.end()), result.cited.end());
  return result;
}

}  // namespace incidentqa
