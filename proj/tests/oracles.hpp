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

// Independent reference implementations used as test oracles. They share
// nothing with the library beyond the tokenizer.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "incidentqa/tokenize.hpp"

namespace incidentqa::oracle {

/// Direct double loop over query terms and chunk tokens.
inline double bm25(const std::vector<TokenSeq>& corpus, const TokenSeq& query, std::size_t chunk,
                   double k1, double b) {
  const double n = static_cast<double>(corpus.size());
  double total_len = 0;
  for (const auto& c : corpus) total_len += static_cast<double>(c.size());
  const double avgcl = total_len / n;
  double score = 0;
  for (const auto& t : query) {
    double f = 0;
    for (const auto& tok : corpus[chunk]) f += tok == t ? 1 : 0;
    if (f == 0) continue;
    double nt = 0;
    for (const auto& c : corpus) nt += std::find(c.begin(), c.end(), t) != c.end() ? 1 : 0;
    const double idf = std::log((n - nt + 0.5) / (nt + 0.5) + 1.0);
    const double len = static_cast<double>(corpus[chunk].size());
    score += idf * f * (k1 + 1) / (f + k1 * (1 - b + b * len / avgcl));
  }
  return score;
}

/// Longest common subsequence by enumerating every subsequence of the
/// shorter sequence (feasible up to about 16 tokens).
inline std::size_t lcs_exhaustive(const TokenSeq& a, const TokenSeq& b) {
  const TokenSeq& s = a.size() <= b.size() ? a : b;
  const TokenSeq& t = a.size() <= b.size() ? b : a;
  std::size_t best = 0;
  const std::uint32_t limit = 1u << s.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const std::size_t len = static_cast<std::size_t>(__builtin_popcount(mask));
    if (len <= best) continue;
    std::size_t j = 0;
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      while (j < t.size() && t[j] != s[i]) ++j;
      if (j == t.size()) ok = false;
      else ++j;
    }
    if (ok) best = len;
  }
  return best;
}

/// Ids sorted by descending score, ties by ascending id.
inline std::vector<std::uint32_t> rank_by(const std::vector<std::uint32_t>& ids,
                                          const std::function<double(std::uint32_t)>& score) {
  std::vector<std::uint32_t> out = ids;
  std::sort(out.begin(), out.end(), [&](std::uint32_t x, std::uint32_t y) {
    const double sx = score(x), sy = score(y);
    return sx != sy ? sx > sy : x < y;
  });
  return out;
}

}  // namespace incidentqa::oracle
