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
#include <optional>
#include <set>
#include <string>

#include "incidentqa/answer.hpp"
#include "incidentqa/classify.hpp"
#include "incidentqa/index.hpp"

namespace incidentqa {

/// Settings document shared by the CLI subcommands. Command-line flags
/// override anything read from it.
///
///   {
///     "retrieval": {"alpha": 0.5, "top_k": 5, "k1": 1.5, "b": 0.75,
///                   "normalize_scores": false},
///     "answer":    {"context_budget": 6000},
///     "index":     {"chunk_size": 768, "overlap": 100, "parallelism": 4},
///     "classify":  {"guidelines": {...}, "transport_only_sources": [...],
///                   "parallelism": 4},
///     "embedding": {"fallback_dimension": 256},
///     "serve":     {"bind": "127.0.0.1:8080", "static_dir": "webui/dist"}
///   }
struct AppConfig {
  AnswerConfig answer;
  BuildOptions index;
  std::optional<GuidelineRules> guidelines;
  std::set<std::string> transport_only_sources;
  std::size_t classify_parallelism = 4;
  std::size_t embedding_dimension = 256;
  std::string bind = "127.0.0.1:8080";
  std::string static_dir;

  const GuidelineRules& rules() const { return guidelines ? *guidelines : GuidelineRules::defaults(); }
};

/// Throws InvalidArgument for unknown sections or keys and ill-typed values,
/// MalformedDocument for invalid JSON.
AppConfig parse_config(std::string_view document);
AppConfig load_config(const std::string& path);

}  // namespace incidentqa
