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

#include <gtest/gtest.h>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <thread>

#include "incidentqa/error.hpp"
#include "incidentqa/providers.hpp"
#include "incidentqa/tokenize.hpp"

namespace incidentqa {
namespace {

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(HashingEmbedder, CountsTokensIntoBuckets) {
  HashingEmbedder e;
  EXPECT_EQ(e.id(), "hashing-tf-v1-256");
  const auto v = e.embed("port port ferry");
  ASSERT_EQ(v.size(), 256u);
  double total = 0;
  for (float x : v) total += x;
  EXPECT_NEAR(total, 3.0, 1e-6);
  if (e.bucket("port") != e.bucket("ferry")) {
    EXPECT_FLOAT_EQ(v[e.bucket("port")], 2.0f);
  }
  EXPECT_EQ(e.embed("Port, PORT!"), e.embed("port port"));
  for (float x : e.embed("")) EXPECT_EQ(x, 0.0f);
  EXPECT_EQ(HashingEmbedder(64).embed("x").size(), 64u);
  EXPECT_EQ(e.bucket("x"), fnv1a64("x") % 256);
}

class MockOpenAi : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      last_body_ = nlohmann::json::parse(req.body);
      last_auth_ = req.get_header_value("Authorization");
      const nlohmann::json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "Rail"}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    server_.Post("/v1/embeddings", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"data": [{"embedding": [0.5, 0.25, 0.0]}]})", "application/json");
    });
    server_.Post("/broken/chat/completions", [](const httplib::Request&, httplib::Response& res) {
      res.status = 502;
      res.set_content("bad gateway", "text/plain");
    });
    server_.Post("/garbled/chat/completions", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"choices": []})", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  std::string base(const std::string& prefix) const {
    return "http://127.0.0.1:" + std::to_string(port_) + prefix;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  nlohmann::json last_body_;
  std::string last_auth_;
};

TEST_F(MockOpenAi, ChatCompletion) {
  HttpChatProvider chat({base("/v1"), "secret", "test-model", 5});
  EXPECT_EQ(chat.generate({"classify this", 0.0, GenerationPurpose::Classification}), "Rail");
  EXPECT_EQ(last_body_["model"], "test-model");
  EXPECT_EQ(last_body_["temperature"], 0.0);
  EXPECT_EQ(last_body_["messages"][0]["content"], "classify this");
  EXPECT_EQ(last_auth_, "Bearer secret");
  EXPECT_EQ(chat.id(), "http-chat:test-model");
}

TEST_F(MockOpenAi, Embedding) {
  HttpEmbeddingProvider emb({base("/v1/"), "", "embed-model", 5});
  const auto v = emb.embed("text");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_FLOAT_EQ(v[0], 0.5f);
}

TEST_F(MockOpenAi, FailuresBecomeProviderUnavailable) {
  for (const auto& prefix : {std::string("/broken"), std::string("/garbled")}) {
    HttpChatProvider chat({base(prefix), "", "m", 5});
    try {
      chat.generate({"x"});
      FAIL() << prefix;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ProviderUnavailable);
    }
  }
  HttpChatProvider unreachable({"http://127.0.0.1:1", "", "m", 1});
  EXPECT_THROW(unreachable.generate({"x"}), Error);
  EXPECT_THROW(HttpChatProvider({"not a url", "", "m", 1}).generate({"x"}), Error);
}

TEST(StubGenerator, PurposeBehaviors) {
  StubGenerator stub;
  EXPECT_EQ(stub.generate({"Incident data:\nattack_name: ferry ticketing outage", 0.0,
                           GenerationPurpose::Classification}),
            "Maritime");
  EXPECT_EQ(stub.generate({"Incident data:\nattack_name: bank fraud", 0.0, GenerationPurpose::Classification}),
            "null");
  EXPECT_EQ(stub.generate({"anything", 0.0, GenerationPurpose::Extraction}), "[]");
  const std::string answer_prompt =
      "Context:\nattack_name: X\ndescription: Ferry systems failed.\n---\ndescription: Ports closed.\nQuestion: q\n";
  EXPECT_EQ(stub.generate({answer_prompt, 0.0, GenerationPurpose::Answer}), "Ferry systems failed. Ports closed.");
  EXPECT_EQ(stub.generate({"Drafts:\nA\n---\nB\nQuestion: q", 0.0, GenerationPurpose::Consolidation}), "A B");
}

TEST(ScriptedGenerator, ReplaysAndRecords) {
  ScriptedGenerator s({"one", "two"});
  EXPECT_EQ(s.generate({"a"}), "one");
  EXPECT_EQ(s.generate({"b"}), "two");
  EXPECT_EQ(s.generate({"c"}), "two");
  ASSERT_EQ(s.requests().size(), 3u);
  EXPECT_EQ(s.requests()[2].prompt, "c");
}

TEST(ProvidersFromEnv, Selection) {
  ::unsetenv("LLM_API_BASE");
  ::unsetenv("EMBED_API_BASE");
  ::setenv("EMBED_FALLBACK", "1", 1);
  auto stub = providers_from_env(true);
  EXPECT_EQ(stub.generator->id(), "stub-generator-v1");
  EXPECT_EQ(stub.embedder->id(), "hashing-tf-v1-256");
  auto none = providers_from_env(false, 128);
  EXPECT_EQ(none.embedder->id(), "hashing-tf-v1-128");
  try {
    none.generator->generate({"x"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ProviderUnavailable);
  }
  ::setenv("LLM_API_BASE", "http://127.0.0.1:1/v1", 1);
  ::setenv("LLM_MODEL", "m1", 1);
  EXPECT_EQ(providers_from_env(false).generator->id(), "http-chat:m1");
  ::unsetenv("LLM_API_BASE");
  ::unsetenv("LLM_MODEL");
}

}  // namespace
}  // namespace incidentqa
