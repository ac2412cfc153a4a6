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

#include "incidentqa/config.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "incidentqa/error.hpp"
#include "incidentqa/io.hpp"

namespace incidentqa {

namespace {

using nlohmann::json;

void only_keys(const json& section, std::string_view name, std::initializer_list<std::string_view> keys) {
  if (!section.is_object()) {
    throw Error(ErrorCode::InvalidArgument, "config section '" + std::string(name) + "' must be an object");
  }
  for (const auto& [key, value] : section.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw Error(ErrorCode::InvalidArgument,
                  "unknown config key '" + std::string(name) + "." + key + "'");
    }
  }
}

template <typename T>
void read(const json& section, const char* key, T& out) {
  if (!section.contains(key)) return;
  try {
    out = section.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

AppConfig parse_config(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("config: ") + e.what());
  }
  only_keys(doc, "<root>", {"retrieval", "answer", "index", "classify", "embedding", "serve"});
  AppConfig cfg;
  if (doc.contains("retrieval")) {
    const auto& s = doc["retrieval"];
    only_keys(s, "retrieval", {"alpha", "top_k", "k1", "b", "normalize_scores"});
    read(s, "alpha", cfg.answer.retrieval.alpha);
    read(s, "top_k", cfg.answer.retrieval.k);
    read(s, "k1", cfg.answer.retrieval.k1);
    read(s, "b", cfg.answer.retrieval.b);
    read(s, "normalize_scores", cfg.answer.retrieval.normalize_scores);
  }
  if (doc.contains("answer")) {
    const auto& s = doc["answer"];
    only_keys(s, "answer", {"context_budget"});
    read(s, "context_budget", cfg.answer.context_budget);
  }
  if (doc.contains("index")) {
    const auto& s = doc["index"];
    only_keys(s, "index", {"chunk_size", "overlap", "parallelism"});
    read(s, "chunk_size", cfg.index.chunk_size);
    read(s, "overlap", cfg.index.chunk_overlap);
    read(s, "parallelism", cfg.index.parallelism);
  }
  if (doc.contains("classify")) {
    const auto& s = doc["classify"];
    only_keys(s, "classify", {"guidelines", "transport_only_sources", "parallelism"});
    if (s.contains("guidelines")) cfg.guidelines = GuidelineRules::from_json(s["guidelines"]);
    read(s, "transport_only_sources", cfg.transport_only_sources);
    read(s, "parallelism", cfg.classify_parallelism);
  }
  if (doc.contains("embedding")) {
    const auto& s = doc["embedding"];
    only_keys(s, "embedding", {"fallback_dimension"});
    read(s, "fallback_dimension", cfg.embedding_dimension);
    if (cfg.embedding_dimension == 0) {
      throw Error(ErrorCode::InvalidArgument, "embedding.fallback_dimension must be positive");
    }
  }
  if (doc.contains("serve")) {
    const auto& s = doc["serve"];
    only_keys(s, "serve", {"bind", "static_dir"});
    read(s, "bind", cfg.bind);
    read(s, "static_dir", cfg.static_dir);
  }
  return cfg;
}

AppConfig load_config(const std::string& path) { return parse_config(io::read_file(path)); }

}  // namespace incidentqa
