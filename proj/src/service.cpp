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

#include "incidentqa/service.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>

#include "incidentqa/error.hpp"
#include "incidentqa/record_json.hpp"
#include "incidentqa/text.hpp"

namespace incidentqa {

using text::lowercase;
using text::trim;

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t kMaxLimit = 500;

template <typename T>
T parse_number(std::string_view name, std::string_view text) {
  T value{};
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw Error(ErrorCode::InvalidParams, std::string(name) + " must be an integer (got '" +
                                              std::string(text) + "')");
  }
  return value;
}

bool icontains(std::string_view haystack, std::string_view lowered_needle) {
  return lowercase(haystack).find(lowered_needle) != std::string::npos;
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyRetrieval:
      return 404;
    case ErrorCode::EmptyIndex:
      return 503;
    default:
      break;
  }
  switch (error_family(code)) {
    case ErrorFamily::Usage:
      return 400;
    case ErrorFamily::Provider:
      return 502;
    default:
      return 500;
  }
}

ServiceResponse fail(int status, std::string_view code, std::string_view message) {
  return {status, error_body(code, message)};
}

ServiceResponse not_loaded() { return fail(503, "not_loaded", "the index is not loaded"); }

ordered_json cited_json(const RecordKey& key, const IncidentStore& store) {
  ordered_json j;
  j["key"] = key.to_string();
  if (const auto* r = store.find(key)) {
    j["attack_name"] = r->attack_name;
    j["mode"] = r->transportation_mode == TransportMode::None
                    ? ordered_json(nullptr)
                    : ordered_json(std::string(mode_name(r->transportation_mode)));
    j["date"] = r->date_iso ? ordered_json(r->date_iso->to_string())
                            : (r->date ? ordered_json(*r->date) : ordered_json(nullptr));
  }
  return j;
}

template <typename T>
void override_from(const nlohmann::json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::InvalidParams, std::string("'") + key + "' has the wrong type");
  }
}

}  // namespace

ordered_json error_body(std::string_view code, std::string_view message) {
  ordered_json j;
  j["error"] = {{"code", code}, {"message", message}};
  return j;
}

IncidentFilter IncidentFilter::from_params(const QueryParams& params) {
  IncidentFilter f;
  for (const auto& [name, value] : params) {
    if (name == "mode") {
      const auto mode = parse_mode_label(value);
      if (!mode) throw Error(ErrorCode::InvalidParams, "unknown mode '" + value + "'");
      f.mode = *mode;
    } else if (name == "year_from") {
      f.year_from = parse_number<int>(name, value);
    } else if (name == "year_to") {
      f.year_to = parse_number<int>(name, value);
    } else if (name == "source") {
      f.source = value;
    } else if (name == "q") {
      f.text = lowercase(value);
    } else if (name == "country") {
      f.country = lowercase(value);
    } else if (name == "offset") {
      const auto v = parse_number<long long>(name, value);
      if (v < 0) throw Error(ErrorCode::InvalidParams, "offset must be >= 0");
      f.offset = static_cast<std::size_t>(v);
    } else if (name == "limit") {
      const auto v = parse_number<long long>(name, value);
      if (v < 1 || v > static_cast<long long>(kMaxLimit)) {
        throw Error(ErrorCode::InvalidParams, "limit must be in [1, 500]");
      }
      f.limit = static_cast<std::size_t>(v);
    } else {
      throw Error(ErrorCode::InvalidParams, "unknown filter '" + name + "'");
    }
  }
  if (f.year_from && f.year_to && *f.year_from > *f.year_to) {
    throw Error(ErrorCode::InvalidParams, "year_from must not exceed year_to");
  }
  return f;
}

bool IncidentFilter::matches(const IncidentRecord& r) const {
  if (mode && r.transportation_mode != *mode) return false;
  if (source && r.source_dataset != *source) return false;
  if (year_from || year_to) {
    if (!r.date_iso) return false;
    if (year_from && r.date_iso->year < *year_from) return false;
    if (year_to && r.date_iso->year > *year_to) return false;
  }
  if (country) {
    if (!r.victim || !r.victim->country || !icontains(*r.victim->country, *country)) return false;
  }
  if (text) {
    const bool hit = icontains(r.attack_name, *text) || icontains(r.description, *text) ||
                     (r.victim && icontains(r.victim->name, *text));
    if (!hit) return false;
  }
  return true;
}

Service::Service(std::shared_ptr<const KnowledgeBase> kb, std::shared_ptr<EmbeddingProvider> embedder,
                 std::shared_ptr<GenerationProvider> generator, AnswerConfig defaults,
                 std::optional<IndexManifest> manifest)
    : kb_(std::move(kb)),
      embedder_(std::move(embedder)),
      generator_(std::move(generator)),
      defaults_(defaults),
      manifest_(std::move(manifest)) {}

ServiceResponse Service::handle_query(std::string_view body) const {
  if (!loaded()) return not_loaded();
  const auto started = std::chrono::steady_clock::now();
  AnswerConfig cfg = defaults_;
  std::string question;
  try {
    const auto doc = nlohmann::json::parse(body);
    if (!doc.is_object()) return fail(400, "malformed_request", "request body must be a JSON object");
    if (!doc.contains("question") || !doc["question"].is_string()) {
      return fail(400, "malformed_request", "'question' must be a string");
    }
    question = doc["question"].get<std::string>();
    override_from(doc, "alpha", cfg.retrieval.alpha);
    override_from(doc, "k", cfg.retrieval.k);
    override_from(doc, "k1", cfg.retrieval.k1);
    override_from(doc, "b", cfg.retrieval.b);
    override_from(doc, "normalize_scores", cfg.retrieval.normalize_scores);
    cfg.retrieval.validate();
  } catch (const nlohmann::json::exception& e) {
    return fail(400, "malformed_request", e.what());
  } catch (const Error& e) {
    return fail(400, error_code_name(e.code()), e.what());
  }
  if (trim(question).empty()) return fail(400, "malformed_request", "'question' must not be empty");

  AnswerResult result;
  try {
    result = generate_answer(question, cfg, *kb_, *embedder_, *generator_);
  } catch (const Error& e) {
    return fail(status_for(e.code()), error_code_name(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(500, "system_failure", e.what());
  }
  if (result.cited.empty()) {
    return fail(404, "empty_retrieval", "no incident supports an answer");
  }

  ordered_json j;
  j["question"] = result.question;
  j["answer"] = result.answer;
  ordered_json cited = ordered_json::array();
  for (const auto& key : result.cited) cited.push_back(cited_json(key, kb_->store));
  j["cited"] = cited;
  ordered_json diag = ordered_json::array();
  for (const auto& s : result.retrieved) {
    ordered_json keys = ordered_json::array();
    for (const auto& k : kb_->chunks[s.chunk_id].record_keys) keys.push_back(k.to_string());
    diag.push_back({{"rank", s.rank},
                    {"chunk_id", s.chunk_id},
                    {"dense", s.dense},
                    {"sparse", s.sparse},
                    {"hybrid", s.hybrid},
                    {"record_keys", keys}});
  }
  j["retrieval"] = diag;
  j["batch_count"] = result.batch_count;
  j["provider"] = result.provider_id;
  j["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return {200, j};
}

ServiceResponse Service::list_incidents(const QueryParams& params) const {
  if (!loaded()) return not_loaded();
  IncidentFilter filter;
  try {
    filter = IncidentFilter::from_params(params);
  } catch (const Error& e) {
    return fail(400, error_code_name(e.code()), e.what());
  }
  std::vector<const IncidentRecord*> hits;
  for (const auto& [key, record] : kb_->store) {
    if (filter.matches(record)) hits.push_back(&record);
  }
  std::stable_sort(hits.begin(), hits.end(), [](const IncidentRecord* a, const IncidentRecord* b) {
    if (a->date_iso.has_value() != b->date_iso.has_value()) return a->date_iso.has_value();
    if (a->date_iso && *a->date_iso != *b->date_iso) return *a->date_iso > *b->date_iso;
    return a->key() < b->key();
  });
  ordered_json items = ordered_json::array();
  for (std::size_t i = filter.offset; i < hits.size() && items.size() < filter.limit; ++i) {
    ordered_json item;
    item["key"] = hits[i]->key().to_string();
    item["record"] = record_to_json(*hits[i]);
    items.push_back(std::move(item));
  }
  ordered_json j;
  j["total"] = hits.size();
  j["offset"] = filter.offset;
  j["limit"] = filter.limit;
  j["items"] = items;
  return {200, j};
}

ServiceResponse Service::stats() const {
  if (!loaded()) return not_loaded();
  ordered_json modes;
  for (const auto m : kAllModes) modes[std::string(mode_name(m))] = 0;
  std::map<std::string, std::size_t> sources;
  std::map<std::string, std::size_t> years;
  for (const auto& [key, r] : kb_->store) {
    auto& slot = modes[std::string(mode_name(r.transportation_mode))];
    slot = slot.get<std::size_t>() + 1;
    ++sources[r.source_dataset];
    ++years[r.date_iso ? std::to_string(r.date_iso->year) : "unknown"];
  }
  ordered_json j;
  j["records"] = kb_->store.size();
  j["modes"] = modes;
  j["sources"] = sources;
  j["years"] = years;
  j["chunks"] = kb_->chunks.size();
  if (manifest_) {
    j["index"] = {{"version", manifest_->version},
                  {"tokenizer", manifest_->tokenizer},
                  {"embedding_provider", manifest_->embedding_provider},
                  {"dimension", manifest_->dimension},
                  {"num_chunks", manifest_->num_chunks},
                  {"avgcl", manifest_->avgcl},
                  {"chunk_size", manifest_->chunk_size},
                  {"chunk_overlap", manifest_->chunk_overlap},
                  {"checksum", manifest_->checksum}};
  } else {
    j["index"] = {{"embedding_provider", kb_->dense.provider_id()},
                  {"dimension", kb_->dense.dimension()},
                  {"num_chunks", kb_->chunks.size()},
                  {"avgcl", kb_->sparse.average_chunk_length()},
                  {"chunk_size", kb_->chunk_size},
                  {"chunk_overlap", kb_->chunk_overlap}};
  }
  return {200, j};
}

}  // namespace incidentqa
