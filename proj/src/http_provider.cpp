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

#include <regex>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "incidentqa/error.hpp"
#include "incidentqa/providers.hpp"

namespace incidentqa {

namespace {

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path_prefix;
};

ParsedUrl parse_base_url(const std::string& base) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(base, m, kUrl)) {
    throw Error(ErrorCode::ProviderUnavailable, "invalid provider base URL '" + base + "'");
  }
  std::string prefix = m[2].matched ? m[2].str() : std::string();
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {m[1].str(), prefix};
}

nlohmann::json post_json(const HttpEndpoint& endpoint, const std::string& route,
                         const nlohmann::json& body) {
  const ParsedUrl url = parse_base_url(endpoint.base_url);
  httplib::Client client(url.scheme_host_port);
  client.set_connection_timeout(endpoint.timeout_seconds, 0);
  client.set_read_timeout(endpoint.timeout_seconds, 0);
  client.set_write_timeout(endpoint.timeout_seconds, 0);
  httplib::Headers headers;
  if (!endpoint.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + endpoint.api_key);
  }
  const auto result = client.Post(url.path_prefix + route, headers, body.dump(), "application/json");
  if (!result) {
    throw Error(ErrorCode::ProviderUnavailable,
                "provider request to " + endpoint.base_url + route +
                    " failed: " + httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    throw Error(ErrorCode::ProviderUnavailable, "provider returned HTTP " +
                                                    std::to_string(result->status) + " for " + route);
  }
  try {
    return nlohmann::json::parse(result->body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ProviderUnavailable, std::string("provider returned invalid JSON: ") + e.what());
  }
}

}  // namespace

HttpChatProvider::HttpChatProvider(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

std::string HttpChatProvider::generate(const GenerationRequest& request) {
  const nlohmann::json body = {
      {"model", endpoint_.model},
      {"temperature", request.temperature},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}})},
  };
  const auto response = post_json(endpoint_, "/chat/completions", body);
  try {
    const auto& content = response.at("choices").at(0).at("message").at("content");
    return content.is_null() ? std::string() : content.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ProviderUnavailable,
                std::string("unexpected chat completion shape: ") + e.what());
  }
}

std::string HttpChatProvider::id() const { return "http-chat:" + endpoint_.model; }

HttpEmbeddingProvider::HttpEmbeddingProvider(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

std::vector<float> HttpEmbeddingProvider::embed(std::string_view text) {
  const nlohmann::json body = {{"model", endpoint_.model}, {"input", std::string(text)}};
  const auto response = post_json(endpoint_, "/embeddings", body);
  try {
    return response.at("data").at(0).at("embedding").get<std::vector<float>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ProviderUnavailable, std::string("unexpected embedding shape: ") + e.what());
  }
}

std::string HttpEmbeddingProvider::id() const { return "http-embed:" + endpoint_.model; }

}  // namespace incidentqa
