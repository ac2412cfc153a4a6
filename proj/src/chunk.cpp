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

#include "incidentqa/chunk.hpp"

#include <limits>

#include "incidentqa/error.hpp"

namespace incidentqa {

namespace {

void add_line(std::string& out, std::string_view label, const std::optional<std::string>& value) {
  if (!value) return;
  out += label;
  out += ": ";
  out += *value;
  out += '\n';
}

std::optional<std::string> actor_line(const std::optional<ActorRef>& actor) {
  if (!actor) return std::nullopt;
  std::string s = actor->name;
  if (actor->country || actor->category) {
    s += " (";
    if (actor->country) s += *actor->country;
    if (actor->country && actor->category) s += ", ";
    if (actor->category) s += *actor->category;
    s += ")";
  }
  return s;
}

}  // namespace

std::string render_record_text(const IncidentRecord& r) {
  std::string out;
  add_line(out, "attack_name", r.attack_name);
  add_line(out, "incident_type", r.incident_type);
  add_line(out, "description", r.description);
  add_line(out, "Date", r.date);
  add_line(out, "detection", r.detection);
  add_line(out, "victim", actor_line(r.victim));
  add_line(out, "attacker", actor_line(r.attacker));
  add_line(out, "Motive", r.motive);
  add_line(out, "database_entry_date", r.database_entry_date);
  add_line(out, "Reference", r.reference);
  if (r.transportation_mode != TransportMode::None) {
    add_line(out, "Transportation_mode", std::string(mode_name(r.transportation_mode)));
  }
  return out;
}

std::vector<Window> plan_windows(std::size_t token_count, std::size_t size, std::size_t overlap) {
  if (size == 0 || overlap >= size) {
    throw Error(ErrorCode::InvalidParams, "chunk overlap (" + std::to_string(overlap) +
                                              ") must be smaller than chunk size (" +
                                              std::to_string(size) + ")");
  }
  std::vector<Window> windows;
  const std::size_t stride = size - overlap;
  for (std::size_t start = 0; start < token_count; start += stride) {
    const std::size_t end = std::min(start + size, token_count);
    windows.push_back({start, end - start});
    if (end == token_count) break;
  }
  return windows;
}

std::vector<Chunk> chunk_document(std::string_view text, const std::vector<RecordKey>& keys,
                                  std::size_t size, std::size_t overlap, std::uint32_t first_id) {
  const auto spans = tokenize_with_offsets(text);
  std::vector<Chunk> chunks;
  std::uint32_t id = first_id;
  for (const auto& w : plan_windows(spans.size(), size, overlap)) {
    const auto& first = spans[w.start];
    const auto& last = spans[w.start + w.length - 1];
    chunks.push_back(Chunk{id++, keys, std::string(text.substr(first.begin, last.end - first.begin)),
                           w.length, w.start});
  }
  return chunks;
}

std::vector<Chunk> chunk_corpus(const IncidentStore& store, std::size_t size, std::size_t overlap) {
  // Validate even for an empty store.
  plan_windows(0, size, overlap);
  std::vector<Chunk> chunks;
  for (const auto& [key, record] : store) {
    if (chunks.size() >= std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorCode::InvalidParams, "too many chunks");
    }
    auto doc = chunk_document(render_record_text(record), {key}, size, overlap,
                              static_cast<std::uint32_t>(chunks.size()));
    for (auto& c : doc) chunks.push_back(std::move(c));
  }
  return chunks;
}

}  // namespace incidentqa
