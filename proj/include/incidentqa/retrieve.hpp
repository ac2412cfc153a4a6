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
#include <string_view>
#include <vector>

#include "incidentqa/index.hpp"
#include "incidentqa/providers.hpp"
#include "incidentqa/tokenize.hpp"

namespace incidentqa {

struct RetrievalConfig {
  double alpha = 0.5;
  std::size_t k = 5;
  double k1 = 1.5;
  double b = 0.75;
  /// Min-max normalize each score family over the candidate union first.
  bool normalize_scores = false;

  /// Throws InvalidParams naming the violated bound.
  void validate() const;
};

struct ScoredChunk {
  std::uint32_t chunk_id = 0;
  double dense = 0.0;
  double sparse = 0.0;
  double hybrid = 0.0;
  std::size_t rank = 0;
};

/// q.c / (|q||c|); 0 when either norm is 0. Throws DimensionMismatch.
double cosine(std::span<const float> q, std::span<const float> c);

double idf_value(std::size_t num_chunks, std::size_t containing);
double idf(std::string_view term, const SparseIndex& idx);

/// Throws UnknownChunk.
double bm25(const TokenSeq& query, std::uint32_t chunk_id, const SparseIndex& idx, double k1,
            double b);

/// bm25 for every chunk, term at a time; agrees exactly with bm25().
std::vector<double> bm25_all(const TokenSeq& query, const SparseIndex& idx, double k1, double b);

inline double hybrid_score(double dense, double sparse, double alpha) {
  return alpha * dense + (1.0 - alpha) * sparse;
}

/// Union of the dense and sparse top-k lists, fused and cut to k. Only
/// chunks with a positive score enter a candidate list. Throws
/// EmptyRetrieval when both lists are empty, EmptyIndex for an empty index.
std::vector<ScoredChunk> retrieve(const TokenSeq& query_tokens, std::span<const float> query_vector,
                                  const RetrievalConfig& cfg, const SparseIndex& sparse,
                                  const VectorIndex& dense);

/// Tokenizes and embeds `query`, then ranks.
std::vector<ScoredChunk> retrieve(std::string_view query, const RetrievalConfig& cfg,
                                  const KnowledgeBase& kb, EmbeddingProvider& embedder);

}  // namespace incidentqa
