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

#include "incidentqa/providers.hpp"

#include <cstdlib>
#include <sstream>

#include "incidentqa/classify.hpp"
#include "incidentqa/error.hpp"
#include "incidentqa/text.hpp"
#include "incidentqa/tokenize.hpp"

namespace incidentqa {

namespace {

std::string env_or(const char* name, const std::string& fallback = {}) {
  const char* value = std::getenv(name);
  return value ? std::string(value) : fallback;
}

// Text after the last occurrence of `marker`, or empty when absent.
std::string_view after_marker(std::string_view prompt, std::string_view marker) {
  const auto pos = prompt.rfind(marker);
  if (pos == std::string_view::npos) return {};
  return prompt.substr(pos + marker.size());
}

std::string_view between(std::string_view prompt, std::string_view begin, std::string_view end) {
  const auto b = prompt.find(begin);
  if (b == std::string_view::npos) return {};
  const auto start = b + begin.size();
  const auto e = prompt.find(end, start);
  return prompt.substr(start, e == std::string_view::npos ? std::string_view::npos : e - start);
}

std::string stub_classify(std::string_view prompt) {
  const auto incident = after_marker(prompt, "Incident data:");
  const auto matches = GuidelineRules::defaults().match(tokenize(incident));
  if (matches.empty()) return "null";
  if (matches.size() >= 2) return "Multimodal";
  return std::string(mode_name(matches.front().first));
}

std::string stub_answer(std::string_view prompt) {
  const auto context = between(prompt, "Context:\n", "\nQuestion:");
  std::vector<std::string> facts;
  for (const auto& line : text::split_lines(context)) {
    const auto trimmed = text::trim(line);
    constexpr std::string_view kLabel = "description:";
    if (trimmed.substr(0, kLabel.size()) == kLabel) {
      facts.emplace_back(text::trim(trimmed.substr(kLabel.size())));
    }
  }
  if (facts.empty()) {
    // Fall back to the first passage verbatim.
    for (const auto& line : text::split_lines(context)) {
      const auto trimmed = text::trim(line);
      if (!trimmed.empty() && trimmed != "---") facts.emplace_back(trimmed);
      if (facts.size() == 3) break;
    }
  }
  std::string out;
  for (const auto& fact : facts) {
    if (!out.empty()) out += ' ';
    out += fact;
  }
  return out;
}

std::string stub_consolidate(std::string_view prompt) {
  const auto drafts = between(prompt, "Drafts:\n", "\nQuestion:");
  std::string out;
  for (const auto& line : text::split_lines(drafts)) {
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed == "---") continue;
    if (!out.empty()) out += ' ';
    out += trimmed;
  }
  return out;
}

class UnconfiguredGenerator final : public GenerationProvider {
 public:
  std::string generate(const GenerationRequest&) override {
    throw Error(ErrorCode::ProviderUnavailable,
                "no generation provider configured (set LLM_API_BASE or use --stub-llm)");
  }
  std::string id() const override { return "unconfigured"; }
};

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

HashingEmbedder::HashingEmbedder(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
  }
}

std::size_t HashingEmbedder::bucket(std::string_view token) const noexcept {
  return static_cast<std::size_t>(fnv1a64(token) % dimension_);
}

std::vector<float> HashingEmbedder::embed(std::string_view text) {
  std::vector<float> v(dimension_, 0.0f);
  for (const auto& token : tokenize(text)) v[bucket(token)] += 1.0f;
  return v;
}

std::string HashingEmbedder::id() const { return "hashing-tf-v1-" + std::to_string(dimension_); }

std::string StubGenerator::generate(const GenerationRequest& request) {
  switch (request.purpose) {
    case GenerationPurpose::Classification:
      return stub_classify(request.prompt);
    case GenerationPurpose::Extraction:
      return "[]";
    case GenerationPurpose::Answer:
      return stub_answer(request.prompt);
    case GenerationPurpose::Consolidation:
      return stub_consolidate(request.prompt);
  }
  return {};
}

ScriptedGenerator::ScriptedGenerator(std::vector<std::string> responses)
    : responses_(std::move(responses)) {}

std::string ScriptedGenerator::generate(const GenerationRequest& request) {
  std::lock_guard lock(mu_);
  requests_.push_back(request);
  if (responses_.empty()) return {};
  const std::size_t i = std::min(requests_.size() - 1, responses_.size() - 1);
  return responses_[i];
}

std::vector<GenerationRequest> ScriptedGenerator::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

ProviderSet providers_from_env(bool stub_llm, std::size_t fallback_dimension) {
  ProviderSet set;
  const std::string llm_base = env_or("LLM_API_BASE");
  if (stub_llm) {
    set.generator = std::make_unique<StubGenerator>();
  } else if (!llm_base.empty()) {
    set.generator = std::make_unique<HttpChatProvider>(
        HttpEndpoint{llm_base, env_or("LLM_API_KEY"), env_or("LLM_MODEL", "gpt-4o-mini")});
  } else {
    set.generator = std::make_unique<UnconfiguredGenerator>();
  }
  const std::string embed_base = env_or("EMBED_API_BASE");
  if (env_or("EMBED_FALLBACK") == "1" || embed_base.empty()) {
    set.embedder = std::make_unique<HashingEmbedder>(fallback_dimension);
  } else {
    set.embedder = std::make_unique<HttpEmbeddingProvider>(HttpEndpoint{
        embed_base, env_or("EMBED_API_KEY"), env_or("EMBED_MODEL", "text-embedding-ada-002")});
  }
  return set;
}

}  // namespace incidentqa
