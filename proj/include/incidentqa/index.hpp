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
#include <unordered_map>
#include <vector>

#include "incidentqa/chunk.hpp"
#include "incidentqa/incident.hpp"
#include "incidentqa/providers.hpp"

namespace incidentqa {

struct Posting {
  std::uint32_t chunk_id = 0;
  std::uint32_t term_frequency = 0;

  bool operator==(const Posting&) const = default;
};

/// Inverted index with the corpus statistics BM25 needs. Posting lists are
/// sorted by chunk id.
class SparseIndex {
 public:
  SparseIndex() = default;

  /// Throws EmptyCorpus for an empty chunk list.
  static SparseIndex build(std::span<const Chunk> chunks);

  /// Reassembles an index from persisted parts; statistics are recomputed.
  static SparseIndex from_parts(std::vector<std::uint32_t> chunk_lengths,
                                std::unordered_map<std::string, std::vector<Posting>> postings);

  /// nullptr when the term is absent.
  const std::vector<Posting>* postings(std::string_view term) const;
  std::size_t document_frequency(std::string_view term) const;
  /// f(t, c); 0 when absent.
  std::uint32_t term_frequency(std::string_view term, std::uint32_t chunk_id) const;

  std::size_t num_chunks() const noexcept { return chunk_lengths_.size(); }
  double average_chunk_length() const noexcept { return avgcl_; }
  std::uint32_t chunk_length(std::uint32_t chunk_id) const { return chunk_lengths_.at(chunk_id); }
  const std::vector<std::uint32_t>& chunk_lengths() const noexcept { return chunk_lengths_; }
  const std::unordered_map<std::string, std::vector<Posting>>& terms() const noexcept {
    return postings_;
  }

 private:
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::vector<std::uint32_t> chunk_lengths_;
  double avgcl_ = 0.0;
};

/// Row-major table of unit vectors, one row per chunk id.
class VectorIndex {
 public:
  VectorIndex() = default;
  VectorIndex(std::string provider_id, std::size_t dimension, std::vector<float> data);

  std::span<const float> vector(std::uint32_t chunk_id) const;
  std::size_t size() const noexcept { return dimension_ ? data_.size() / dimension_ : 0; }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::string& provider_id() const noexcept { return provider_id_; }
  std::span<const float> data() const noexcept { return data_; }

  /// dense[c] = <query, vector(c)> for every chunk, via the active SIMD
  /// kernels. Throws DimensionMismatch.
  std::vector<double> dot_all(std::span<const float> query) const;

 private:
  std::string provider_id_;
  std::size_t dimension_ = 0;
  std::vector<float> data_;
};

/// Provider vector normalized to unit length. An all-zero vector (text with
/// no tokens under the hashing embedder) stays zero.
std::vector<float> embed(std::string_view text, EmbeddingProvider& provider);

/// Everything the query path needs, loaded or built as a unit.
struct KnowledgeBase {
  IncidentStore store;
  std::vector<Chunk> chunks;
  SparseIndex sparse;
  VectorIndex dense;
  std::size_t chunk_size = kDefaultChunkSize;
  std::size_t chunk_overlap = kDefaultChunkOverlap;
};

struct BuildOptions {
  std::size_t chunk_size = kDefaultChunkSize;
  std::size_t chunk_overlap = kDefaultChunkOverlap;
  /// Concurrent embedding requests.
  std::size_t parallelism = 4;
};

/// Sparse and dense indexes over `chunks`. Throws EmptyCorpus,
/// ProviderUnavailable or DimensionMismatch (provider changed dimension).
std::pair<SparseIndex, VectorIndex> build_indexes(std::span<const Chunk> chunks,
                                                  EmbeddingProvider& provider,
                                                  std::size_t parallelism = 4);

/// Chunks the store and builds both indexes.
KnowledgeBase build_knowledge_base(IncidentStore store, EmbeddingProvider& provider,
                                   const BuildOptions& options = {});

inline constexpr std::uint32_t kIndexFormatVersion = 1;

/// Writes manifest.json, postings.bin, vectors.bin, chunks.json and
/// store.json into `dir`. Numeric data is little-endian.
void save_knowledge_base(const KnowledgeBase& kb, const std::string& dir);

/// Throws IncompatibleVersion, ChecksumMismatch or StorageFailure.
KnowledgeBase load_knowledge_base(const std::string& dir);

/// Manifest summary as stored on disk.
struct IndexManifest {
  std::uint32_t version = kIndexFormatVersion;
  std::string tokenizer;
  std::string embedding_provider;
  std::size_t dimension = 0;
  std::size_t num_chunks = 0;
  double avgcl = 0.0;
  std::size_t chunk_size = 0;
  std::size_t chunk_overlap = 0;
  std::string checksum;
};

IndexManifest read_manifest(const std::string& dir);

}  // namespace incidentqa
