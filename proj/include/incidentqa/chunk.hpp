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

#include "incidentqa/incident.hpp"
#include "incidentqa/tokenize.hpp"

namespace incidentqa {

inline constexpr std::size_t kDefaultChunkSize = 768;
inline constexpr std::size_t kDefaultChunkOverlap = 100;

struct Chunk {
  std::uint32_t chunk_id = 0;
  std::vector<RecordKey> record_keys;
  /// Source text from the first token's first byte to the last token's last
  /// byte; tokenizes back to exactly `token_count` tokens.
  std::string text;
  std::size_t token_count = 0;
  std::size_t start_token = 0;

  bool operator==(const Chunk&) const = default;
};

/// "label: value" lines in canonical field order; null fields are skipped.
std::string render_record_text(const IncidentRecord& record);

struct Window {
  std::size_t start = 0;
  std::size_t length = 0;
};

/// Windows over a document of `token_count` tokens, starting at multiples
/// of size - overlap. Throws InvalidParams unless 0 <= overlap < size.
std::vector<Window> plan_windows(std::size_t token_count, std::size_t size, std::size_t overlap);

/// Chunks one document. Ids are assigned from `first_id` upward.
std::vector<Chunk> chunk_document(std::string_view text, const std::vector<RecordKey>& keys,
                                  std::size_t size, std::size_t overlap, std::uint32_t first_id);

/// Chunks every record of the store in key order; chunks never span records
/// and ids are dense from 0.
std::vector<Chunk> chunk_corpus(const IncidentStore& store, std::size_t size = kDefaultChunkSize,
                                std::size_t overlap = kDefaultChunkOverlap);

}  // namespace incidentqa
