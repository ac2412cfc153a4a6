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

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "incidentqa/answer.hpp"
#include "incidentqa/index.hpp"
#include "incidentqa/providers.hpp"

namespace incidentqa {

struct ServiceResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

using QueryParams = std::multimap<std::string, std::string>;

struct IncidentFilter {
  std::optional<TransportMode> mode;
  std::optional<int> year_from;
  std::optional<int> year_to;
  std::optional<std::string> source;
  /// Case-insensitive substring of attack name, description or victim.
  std::optional<std::string> text;
  /// Case-insensitive substring of the victim's country.
  std::optional<std::string> country;
  std::size_t offset = 0;
  std::size_t limit = 50;

  /// Throws InvalidParams on unknown names or out-of-range values.
  static IncidentFilter from_params(const QueryParams& params);
  bool matches(const IncidentRecord& record) const;
};

/// Read-only request handlers over a loaded knowledge base. Transport
/// independent so the HTTP layer stays a thin adapter.
class Service {
 public:
  /// An unloaded service; data endpoints answer 503.
  Service() = default;
  Service(std::shared_ptr<const KnowledgeBase> kb, std::shared_ptr<EmbeddingProvider> embedder,
          std::shared_ptr<GenerationProvider> generator, AnswerConfig defaults = {},
          std::optional<IndexManifest> manifest = std::nullopt);

  /// Body: {"question": str, "alpha"?: num, "k"?: int, "k1"?: num, "b"?: num,
  /// "normalize_scores"?: bool}.
  ServiceResponse handle_query(std::string_view body) const;
  ServiceResponse list_incidents(const QueryParams& params) const;
  ServiceResponse stats() const;

  bool loaded() const noexcept { return kb_ != nullptr; }

 private:
  std::shared_ptr<const KnowledgeBase> kb_;
  std::shared_ptr<EmbeddingProvider> embedder_;
  std::shared_ptr<GenerationProvider> generator_;
  AnswerConfig defaults_;
  std::optional<IndexManifest> manifest_;
};

/// {"error": {"code": ..., "message": ...}}
nlohmann::ordered_json error_body(std::string_view code, std::string_view message);

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  /// Served at "/" when non-empty.
  std::string static_dir;
};

/// Parses "host:port", "host" or ":port". Throws InvalidArgument.
ServerOptions parse_bind_address(std::string_view text, ServerOptions base = {});

/// Serves the routes below until stop() is called.
///   POST /api/query, GET /api/incidents, GET /api/stats, GET /healthz
class HttpServer {
 public:
  HttpServer(const Service& service, ServerOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket; returns the bound port (useful with port 0).
  /// Throws SystemFailure when the address cannot be bound.
  int bind();
  /// Blocks serving requests. Call bind() first.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace incidentqa
