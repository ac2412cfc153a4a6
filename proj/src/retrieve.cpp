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

#include "incidentqa/retrieve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "incidentqa/error.hpp"
#include "incidentqa/simd/kernels.hpp"

namespace incidentqa {

namespace {

std::string bound_message(std::string_view name, double value, std::string_view bound) {
  std::ostringstream os;
  os << name << " must be " << bound << " (got " << value << ")";
  return os.str();
}

double length_norm(const SparseIndex& idx, std::uint32_t chunk_id, double k1, double b) {
  const double avgcl = idx.average_chunk_length();
  const double ratio = avgcl > 0.0 ? idx.chunk_length(chunk_id) / avgcl : 0.0;
  return k1 * (1.0 - b + b * ratio);
}

double term_score(double idf_t, std::uint32_t f, double k1, double norm) {
  const double fd = f;
  return idf_t * fd * (k1 + 1.0) / (fd + norm);
}

// Candidate ids with a positive score, best first, at most k.
std::vector<std::uint32_t> top_k(const std::vector<double>& scores, std::size_t k) {
  std::vector<std::uint32_t> ids;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > 0.0) ids.push_back(static_cast<std::uint32_t>(i));
  }
  const auto better = [&](std::uint32_t a, std::uint32_t b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  };
  if (ids.size() > k) {
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(), better);
    ids.resize(k);
  } else {
    std::sort(ids.begin(), ids.end(), better);
  }
  return ids;
}

void min_max(std::vector<double>& values) {
  if (values.empty()) return;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double span = *hi - min;
  for (auto& v : values) v = span > 0.0 ? (v - min) / span : 0.0;
}

}  // namespace

void RetrievalConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, bound_message("alpha", alpha, "in [0, 1]"));
  }
  if (k < 1) throw Error(ErrorCode::InvalidParams, "k must be at least 1");
  if (!(k1 > 0.0) || !std::isfinite(k1)) {
    throw Error(ErrorCode::InvalidParams, bound_message("k1", k1, "> 0"));
  }
  if (!(b >= 0.0 && b <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, bound_message("b", b, "in [0, 1]"));
  }
}

double cosine(std::span<const float> q, std::span<const float> c) {
  if (q.size() != c.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cosine of vectors with dimensions " +
                                                  std::to_string(q.size()) + " and " +
                                                  std::to_string(c.size()));
  }
  const double nq = simd::l2_norm(q);
  const double nc = simd::l2_norm(c);
  if (nq == 0.0 || nc == 0.0) return 0.0;
  return std::clamp(simd::dot(q, c) / (nq * nc), -1.0, 1.0);
}

double idf_value(std::size_t num_chunks, std::size_t containing) {
  const double n = static_cast<double>(num_chunks);
  const double nt = static_cast<double>(containing);
  return std::log((n - nt + 0.5) / (nt + 0.5) + 1.0);
}

double idf(std::string_view term, const SparseIndex& idx) {
  return idf_value(idx.num_chunks(), idx.document_frequency(term));
}

double bm25(const TokenSeq& query, std::uint32_t chunk_id, const SparseIndex& idx, double k1,
            double b) {
  if (chunk_id >= idx.num_chunks()) {
    throw Error(ErrorCode::UnknownChunk, "chunk " + std::to_string(chunk_id) + " is not indexed");
  }
  const double norm = length_norm(idx, chunk_id, k1, b);
  double score = 0.0;
  for (const auto& term : query) {
    const auto f = idx.term_frequency(term, chunk_id);
    if (f == 0) continue;
    score += term_score(idf(term, idx), f, k1, norm);
  }
  return score;
}

std::vector<double> bm25_all(const TokenSeq& query, const SparseIndex& idx, double k1, double b) {
  const std::size_t n = idx.num_chunks();
  std::vector<double> norms(n);
  for (std::size_t c = 0; c < n; ++c) norms[c] = length_norm(idx, static_cast<std::uint32_t>(c), k1, b);
  std::vector<double> scores(n, 0.0);
  for (const auto& term : query) {
    const auto* list = idx.postings(term);
    if (!list) continue;
    const double idf_t = idf_value(n, list->size());
    for (const auto& p : *list) {
      if (p.term_frequency == 0) continue;
      scores[p.chunk_id] += term_score(idf_t, p.term_frequency, k1, norms[p.chunk_id]);
    }
  }
  return scores;
}

std::vector<ScoredChunk> retrieve(const TokenSeq& query_tokens, std::span<const float> query_vector,
                                  const RetrievalConfig& cfg, const SparseIndex& sparse,
                                  const VectorIndex& dense) {
  cfg.validate();
  if (sparse.num_chunks() == 0 || dense.size() == 0) {
    throw Error(ErrorCode::EmptyIndex, "the index holds no chunks");
  }
  if (sparse.num_chunks() != dense.size()) {
    throw Error(ErrorCode::DimensionMismatch, "sparse and dense indexes disagree on chunk count");
  }
  const std::vector<double> dense_scores = dense.dot_all(query_vector);
  const std::vector<double> sparse_scores = bm25_all(query_tokens, sparse, cfg.k1, cfg.b);

  std::vector<std::uint32_t> ids = top_k(dense_scores, cfg.k);
  const auto sparse_ids = top_k(sparse_scores, cfg.k);
  ids.insert(ids.end(), sparse_ids.begin(), sparse_ids.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) {
    throw Error(ErrorCode::EmptyRetrieval, "no chunk matched the query");
  }

  std::vector<double> d, s;
  for (const auto id : ids) {
    d.push_back(dense_scores[id]);
    s.push_back(sparse_scores[id]);
  }
  if (cfg.normalize_scores) {
    min_max(d);
    min_max(s);
  }
  std::vector<ScoredChunk> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.push_back({ids[i], d[i], s[i], hybrid_score(d[i], s[i], cfg.alpha), 0});
  }
  std::sort(out.begin(), out.end(), [](const ScoredChunk& a, const ScoredChunk& b) {
    return a.hybrid != b.hybrid ? a.hybrid > b.hybrid : a.chunk_id < b.chunk_id;
  });
  if (out.size() > cfg.k) out.resize(cfg.k);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  return out;
}

std::vector<ScoredChunk> retrieve(std::string_view query, const RetrievalConfig& cfg,
                                  const KnowledgeBase& kb, EmbeddingProvider& embedder) {
  cfg.validate();
  if (kb.chunks.empty()) throw Error(ErrorCode::EmptyIndex, "the index holds no chunks");
  const TokenSeq tokens = tokenize(query);
  const std::vector<float> vec = embed(query, embedder);
  return retrieve(tokens, vec, cfg, kb.sparse, kb.dense);
}

}  // namespace incidentqa
