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

#include "incidentqa/index.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "incidentqa/error.hpp"
#include "incidentqa/simd/kernels.hpp"

namespace incidentqa {

SparseIndex SparseIndex::build(std::span<const Chunk> chunks) {
  if (chunks.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot index an empty chunk list");
  std::vector<std::uint32_t> lengths;
  lengths.reserve(chunks.size());
  std::unordered_map<std::string, std::vector<Posting>> postings;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (chunks[i].chunk_id != i) {
      throw Error(ErrorCode::InvalidArgument, "chunk ids must be dense and ordered");
    }
    const TokenSeq tokens = tokenize(chunks[i].text);
    lengths.push_back(static_cast<std::uint32_t>(tokens.size()));
    std::map<std::string_view, std::uint32_t> tf;
    for (const auto& t : tokens) ++tf[t];
    for (const auto& [term, count] : tf) {
      postings[std::string(term)].push_back({static_cast<std::uint32_t>(i), count});
    }
  }
  return from_parts(std::move(lengths), std::move(postings));
}

SparseIndex SparseIndex::from_parts(std::vector<std::uint32_t> chunk_lengths,
                                    std::unordered_map<std::string, std::vector<Posting>> postings) {
  SparseIndex idx;
  idx.chunk_lengths_ = std::move(chunk_lengths);
  idx.postings_ = std::move(postings);
  double total = 0.0;
  for (const auto len : idx.chunk_lengths_) total += len;
  idx.avgcl_ = idx.chunk_lengths_.empty() ? 0.0 : total / static_cast<double>(idx.chunk_lengths_.size());
  return idx;
}

const std::vector<Posting>* SparseIndex::postings(std::string_view term) const {
  const auto it = postings_.find(std::string(term));
  return it == postings_.end() ? nullptr : &it->second;
}

std::size_t SparseIndex::document_frequency(std::string_view term) const {
  const auto* list = postings(term);
  return list ? list->size() : 0;
}

std::uint32_t SparseIndex::term_frequency(std::string_view term, std::uint32_t chunk_id) const {
  const auto* list = postings(term);
  if (!list) return 0;
  const auto it = std::lower_bound(list->begin(), list->end(), chunk_id,
                                   [](const Posting& p, std::uint32_t id) { return p.chunk_id < id; });
  return (it != list->end() && it->chunk_id == chunk_id) ? it->term_frequency : 0;
}

VectorIndex::VectorIndex(std::string provider_id, std::size_t dimension, std::vector<float> data)
    : provider_id_(std::move(provider_id)), dimension_(dimension), data_(std::move(data)) {
  if (dimension_ == 0 || data_.size() % dimension_ != 0) {
    throw Error(ErrorCode::DimensionMismatch, "vector table size is not a multiple of its dimension");
  }
}

std::span<const float> VectorIndex::vector(std::uint32_t chunk_id) const {
  if (chunk_id >= size()) {
    throw Error(ErrorCode::UnknownChunk, "no vector for chunk " + std::to_string(chunk_id));
  }
  return std::span<const float>(data_).subspan(static_cast<std::size_t>(chunk_id) * dimension_, dimension_);
}

std::vector<double> VectorIndex::dot_all(std::span<const float> query) const {
  if (query.size() != dimension_) {
    throw Error(ErrorCode::DimensionMismatch, "query dimension " + std::to_string(query.size()) +
                                                  " != index dimension " + std::to_string(dimension_));
  }
  std::vector<double> out(size());
  simd::active().dot_rows(data_.data(), size(), dimension_, query.data(), out.data());
  return out;
}

std::vector<float> embed(std::string_view text, EmbeddingProvider& provider) {
  std::vector<float> v = provider.embed(text);
  simd::normalize(v);
  return v;
}

std::pair<SparseIndex, VectorIndex> build_indexes(std::span<const Chunk> chunks,
                                                  EmbeddingProvider& provider,
                                                  std::size_t parallelism) {
  SparseIndex sparse = SparseIndex::build(chunks);

  std::vector<std::vector<float>> vectors(chunks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mu;
  const auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= chunks.size()) return;
      try {
        vectors[i] = embed(chunks[i].text, provider);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        failed = true;
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(parallelism, chunks.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  const std::size_t dim = vectors.front().size();
  if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "provider returned an empty vector");
  std::vector<float> table;
  table.reserve(dim * vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "provider returned vectors of differing dimension");
    }
    table.insert(table.end(), v.begin(), v.end());
  }
  return {std::move(sparse), VectorIndex(provider.id(), dim, std::move(table))};
}

KnowledgeBase build_knowledge_base(IncidentStore store, EmbeddingProvider& provider,
                                   const BuildOptions& options) {
  KnowledgeBase kb;
  kb.chunks = chunk_corpus(store, options.chunk_size, options.chunk_overlap);
  kb.chunk_size = options.chunk_size;
  kb.chunk_overlap = options.chunk_overlap;
  auto [sparse, dense] = build_indexes(kb.chunks, provider, options.parallelism);
  kb.sparse = std::move(sparse);
  kb.dense = std::move(dense);
  store.seal();
  kb.store = std::move(store);
  return kb;
}

}  // namespace incidentqa
