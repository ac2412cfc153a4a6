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
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace incidentqa {

/// What a generation request is for. Remote providers ignore it; the
/// offline stub uses it to pick a deterministic behavior.
enum class GenerationPurpose { Classification, Extraction, Answer, Consolidation };

struct GenerationRequest {
  std::string prompt;
  double temperature = 0.0;
  GenerationPurpose purpose = GenerationPurpose::Answer;
};

class GenerationProvider {
 public:
  virtual ~GenerationProvider() = default;
  /// Throws Error(ProviderUnavailable) on transport or protocol failure.
  virtual std::string generate(const GenerationRequest& request) = 0;
  virtual std::string id() const = 0;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  /// Raw provider vector; callers normalize.
  virtual std::vector<float> embed(std::string_view text) = 0;
  virtual std::string id() const = 0;
};

/// Offline embedder: feature-hashed term frequencies over the shared
/// tokenizer (FNV-1a 64 of the token, modulo dimension).
class HashingEmbedder final : public EmbeddingProvider {
 public:
  explicit HashingEmbedder(std::size_t dimension = 256);

  std::vector<float> embed(std::string_view text) override;
  std::string id() const override;

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t bucket(std::string_view token) const noexcept;

 private:
  std::size_t dimension_;
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// OpenAI-compatible endpoint description. `base_url` includes the API
/// prefix, e.g. "https://api.example.com/v1".
struct HttpEndpoint {
  std::string base_url;
  std::string api_key;
  std::string model;
  int timeout_seconds = 60;
};

/// POST {base}/chat/completions with a single user message.
class HttpChatProvider final : public GenerationProvider {
 public:
  explicit HttpChatProvider(HttpEndpoint endpoint);
  std::string generate(const GenerationRequest& request) override;
  std::string id() const override;

 private:
  HttpEndpoint endpoint_;
};

/// POST {base}/embeddings.
class HttpEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(HttpEndpoint endpoint);
  std::vector<float> embed(std::string_view text) override;
  std::string id() const override;

 private:
  HttpEndpoint endpoint_;
};

/// Deterministic offline generator.
///  - Classification: applies the default keyword guidelines to the
///    incident block of the prompt and answers with a label or "null".
///  - Extraction: answers "[]".
///  - Answer: echoes the description lines of the context passages.
///  - Consolidation: joins the drafts.
class StubGenerator final : public GenerationProvider {
 public:
  std::string generate(const GenerationRequest& request) override;
  std::string id() const override { return "stub-generator-v1"; }
};

/// Replays scripted responses in order (the last one repeats) and records
/// every request. Thread-safe.
class ScriptedGenerator final : public GenerationProvider {
 public:
  explicit ScriptedGenerator(std::vector<std::string> responses);
  std::string generate(const GenerationRequest& request) override;
  std::string id() const override { return "scripted"; }

  std::vector<GenerationRequest> requests() const;

 private:
  mutable std::mutex mu_;
  std::vector<std::string> responses_;
  std::vector<GenerationRequest> requests_;
};

struct ProviderSet {
  std::unique_ptr<GenerationProvider> generator;
  std::unique_ptr<EmbeddingProvider> embedder;
};

/// Builds providers from LLM_API_BASE / LLM_API_KEY / LLM_MODEL and
/// EMBED_API_BASE / EMBED_API_KEY / EMBED_MODEL. EMBED_FALLBACK=1 (or an
/// unset EMBED_API_BASE) selects the hashing embedder. `stub_llm` selects
/// StubGenerator; without it and without LLM_API_BASE every generation
/// throws ProviderUnavailable.
ProviderSet providers_from_env(bool stub_llm, std::size_t fallback_dimension = 256);

}  // namespace incidentqa
