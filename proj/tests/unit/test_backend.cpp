#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "miforge/backend/backend.h"
#include "miforge/backend/errors.h"
#include "miforge/backend/http.h"
#include "miforge/backend/json_schema.h"
#include "miforge/backend/scripted.h"
#include "miforge/backend/stub_embedder.h"
#include "miforge/orchestrator/prompts.h"

using namespace miforge;
using namespace miforge::backend;
using nlohmann::json;

namespace {

ChatRequest simple_request(const std::string& text, CallRole role = CallRole::other) {
  ChatRequest r;
  r.system_prompt = "system";
  r.messages.push_back({"user", text});
  r.role = role;
  return r;
}

ChatRequest selector_like(CallRole role = CallRole::selector) {
  auto r = simple_request("classify", role);
  r.json_schema = orchestrator::selector_schema();
  return r;
}

class FailingProvider : public ChatProvider {
 public:
  std::string complete(const ChatRequest&) override {
    ++attempts;
    throw TransportError("timeout");
  }
  std::string model_name() const override { return "failing"; }
  std::atomic<int> attempts{0};
};

}  // namespace

TEST(Chat, ScriptedFixtureEchoesVerbatim) {
  auto provider = std::make_shared<ScriptedProvider>();
  const auto request = simple_request("hello");
  provider->add_fixture(prompt_hash(request), "  fixture reply\n");
  Backend backend(provider);
  EXPECT_EQ(backend.chat(request), "  fixture reply\n");
  EXPECT_EQ(backend.call_count(), 1);
}

TEST(Chat, FixtureFileIsJsonlKeyedOnPromptHash) {
  const auto path = std::filesystem::temp_directory_path() / "miforge_fixtures.jsonl";
  const auto request = simple_request("from file");
  {
    std::ofstream out(path);
    out << json{{"prompt_hash", prompt_hash(request)}, {"response", "loaded"}}.dump() << "\n";
  }
  auto provider = std::make_shared<ScriptedProvider>();
  provider->load_fixtures(path);
  Backend backend(provider);
  EXPECT_EQ(backend.chat(request), "loaded");
  std::filesystem::remove(path);
}

TEST(Chat, EmptyMessageListIsValidationError) {
  Backend backend(std::make_shared<ScriptedProvider>());
  ChatRequest r;
  r.system_prompt = "system";
  EXPECT_THROW(backend.chat(r), ValidationError);
  EXPECT_EQ(backend.call_count(), 0);
}

TEST(Chat, NonAlternatingRolesAreRejected) {
  ChatRequest r = simple_request("a");
  r.messages.push_back({"user", "b"});
  EXPECT_THROW(validate(r), ValidationError);
}

TEST(Chat, TransportExhaustionCarriesAttemptCount) {
  auto provider = std::make_shared<FailingProvider>();
  Backend backend(provider);
  auto request = simple_request("x");
  request.params.max_retries = 3;
  try {
    backend.chat(request);
    FAIL() << "expected TransportError";
  } catch (const TransportError& e) {
    EXPECT_EQ(e.attempts(), 4);
  }
  EXPECT_EQ(provider->attempts.load(), 4);
  // Terminal failures count every attempt.
  EXPECT_EQ(backend.call_count(), 4);
}

TEST(Chat, EmptyCompletionIsAnError) {
  auto provider = std::make_shared<ScriptedProvider>();
  for (int i = 0; i < 4; ++i) provider->push(CallRole::other, "   ");
  Backend backend(provider);
  EXPECT_THROW(backend.chat(simple_request("x")), EmptyCompletionError);
}

TEST(Chat, RetriedSuccessCountsOnce) {
  auto provider = std::make_shared<ScriptedProvider>();
  provider->push_failure(CallRole::other);
  provider->push_failure(CallRole::other);
  provider->push(CallRole::other, "finally");
  Backend backend(provider);
  EXPECT_EQ(backend.chat(simple_request("x")), "finally");
  EXPECT_EQ(backend.call_count(), 1);
  ASSERT_EQ(backend.events().size(), 1u);
  EXPECT_EQ(backend.events()[0].attempts, 3);
}

TEST(ChatStructured, ParsesSelectorReply) {
  auto provider = std::make_shared<ScriptedProvider>();
  provider->push(CallRole::selector, R"({"client_mi_code":"change","therapist_mi_code":"reflection"})");
  Backend backend(provider);
  const auto reply = backend.chat_structured(selector_like());
  EXPECT_EQ(reply["client_mi_code"], "change");
  EXPECT_EQ(reply["therapist_mi_code"], "reflection");
}

TEST(ChatStructured, EnumViolationTriggersRepairThenError) {
  auto provider = std::make_shared<ScriptedProvider>();
  const std::string bad = R"({"client_mi_code":"maybe","therapist_mi_code":"reflection"})";
  provider->push(CallRole::selector, bad);
  provider->push(CallRole::selector, bad);
  Backend backend(provider);
  auto request = selector_like();
  request.params.max_retries = 1;
  try {
    backend.chat_structured(request);
    FAIL() << "expected StructuredOutputError";
  } catch (const StructuredOutputError& e) {
    EXPECT_EQ(e.raw_text(), bad);
    EXPECT_EQ(e.attempts(), 2);
  }
  const auto seen = provider->captured();
  ASSERT_EQ(seen.size(), 2u);
  // The repair round carries the bad reply and the repair instruction.
  ASSERT_EQ(seen[1].messages.size(), 3u);
  EXPECT_EQ(seen[1].messages[1].content, bad);
  EXPECT_NE(seen[1].messages[2].content.find(kRepairInstruction), std::string::npos);
  EXPECT_NE(seen[1].messages[2].content.find("maybe"), std::string::npos);
}

TEST(ChatStructured, RepairedReplyIsAccepted) {
  auto provider = std::make_shared<ScriptedProvider>();
  provider->push(CallRole::selector, R"({"client_mi_code":"maybe","therapist_mi_code":"reflection"})");
  provider->push(CallRole::selector, R"({"client_mi_code":"sustain","therapist_mi_code":"question"})");
  Backend backend(provider);
  EXPECT_EQ(backend.chat_structured(selector_like())["client_mi_code"], "sustain");
  EXPECT_EQ(backend.call_count(), 1);
}

TEST(ChatStructured, ExtractsFencedJsonFromProse) {
  auto provider = std::make_shared<ScriptedProvider>();
  provider->push(CallRole::selector,
                 "Sure! Here is my answer:\n```json\n{\"client_mi_code\": \"neutral\", "
                 "\"therapist_mi_code\": \"question\"}\n```\nHope this helps.");
  Backend backend(provider);
  const auto reply = backend.chat_structured(selector_like());
  EXPECT_EQ(reply["client_mi_code"], "neutral");
  EXPECT_EQ(backend.events().front().attempts, 1);
}

TEST(ChatStructured, RequiresSchema) {
  Backend backend(std::make_shared<ScriptedProvider>());
  EXPECT_THROW(backend.chat_structured(simple_request("x")), ValidationError);
}

TEST(ChatStructured, OnlyValidRecordsEscapeUnderFuzzedReplies) {
  const auto schema = orchestrator::selector_schema();
  const std::vector<std::string> replies = {
      "", "{}", "not json", R"({"client_mi_code":1})", R"([1,2,3])",
      R"({"client_mi_code":"change"})", R"({"client_mi_code":"change","therapist_mi_code":"other"})",
      R"({"client_mi_code":"change","therapist_mi_code":"question"})", "{\"client_mi_code\":",
      R"(text {"client_mi_code":"sustain","therapist_mi_code":"therapist_input"} trailing)"};
  for (std::size_t i = 0; i < replies.size(); ++i) {
    for (std::size_t j = 0; j < replies.size(); ++j) {
      auto provider = std::make_shared<ScriptedProvider>();
      provider->push(CallRole::selector, replies[i]);
      provider->push(CallRole::selector, replies[j]);
      Backend backend(provider);
      auto request = selector_like();
      request.params.max_retries = 1;
      try {
        const auto out = backend.chat_structured(request);
        EXPECT_FALSE(schema_violation(schema, out).has_value());
      } catch (const StructuredOutputError&) {
      } catch (const EmptyCompletionError&) {
      }
    }
  }
}

TEST(JsonSchema, ReportsFirstViolation) {
  const json schema = {{"type", "object"},
                       {"required", {"xs"}},
                       {"properties",
                        {{"xs", {{"type", "array"}, {"minItems", 2}, {"maxItems", 2},
                                 {"items", {{"type", "integer"}, {"minimum", 0}, {"maximum", 4}}}}}}}};
  EXPECT_FALSE(schema_violation(schema, json{{"xs", {1, 4}}}));
  EXPECT_TRUE(schema_violation(schema, json{{"xs", {1, 5}}}));
  EXPECT_TRUE(schema_violation(schema, json{{"xs", {1}}}));
  EXPECT_TRUE(schema_violation(schema, json{{"xs", {1, 2.5}}}));
  EXPECT_TRUE(schema_violation(schema, json::object()));
}

TEST(CallCount, FreshBackendIsZeroAndCountsChats) {
  auto provider = std::make_shared<ScriptedProvider>();
  provider->set_fallback([](const ChatRequest&) { return std::optional<std::string>("ok"); });
  Backend backend(provider);
  EXPECT_EQ(backend.call_count(), 0);
  backend.chat(simple_request("a"));
  EXPECT_EQ(backend.call_count(), 1);
}

TEST(CallCount, EqualsEventLogSumUnderConcurrency) {
  auto provider = std::make_shared<ScriptedProvider>();
  provider->set_fallback([](const ChatRequest& r) -> std::optional<std::string> {
    if (r.messages.front().content == "fail") throw TransportError("down");
    return std::string("ok");
  });
  Backend backend(provider);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&backend, t] {
      for (int i = 0; i < 50; ++i) {
        auto r = simple_request(i % 10 == 0 ? "fail" : "fine");
        r.session_id = "s" + std::to_string(t);
        r.params.max_retries = 1;
        try {
          backend.chat(r);
        } catch (const TransportError&) {
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  long sum = 0;
  for (const auto& e : backend.events()) sum += e.counted;
  EXPECT_EQ(sum, backend.call_count());
  EXPECT_EQ(backend.call_count(), 8 * (45 + 5 * 2));
  for (int t = 0; t < 8; ++t) {
    const auto events = backend.events_for("s" + std::to_string(t));
    ASSERT_EQ(events.size(), 50u);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(events[static_cast<std::size_t>(i)].session_seq, i);
  }
}

TEST(Scripted, SyntheticResponderIsPureFunctionOfPrompt) {
  const auto responder = synthetic_responder(42);
  auto r = simple_request("Target client MI code: change", CallRole::client);
  r.turn = 3;
  EXPECT_EQ(responder(r), responder(r));
  auto profile = simple_request("profile me", CallRole::profile);
  const auto reply = json::parse(*responder(profile));
  EXPECT_EQ(reply["scores"].size(), 23u);
  EXPECT_EQ(reply["explanations"].size(), 23u);
}

TEST(Embed, IdenticalInputsGiveIdenticalVectors) {
  Backend backend(std::make_shared<ScriptedProvider>(), std::make_shared<StubEmbedder>());
  const std::vector<std::string> texts{"a", "a"};
  const auto v = backend.embed(texts);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].values, v[1].values);
  EXPECT_EQ(backend.embed_call_count(), 1);
  EXPECT_EQ(backend.call_count(), 0);
}

TEST(Embed, StubSynonymPairIsClose) {
  StubEmbedder stub;
  stub.add_synonym("tired", "exhausted");
  const double c = cosine(stub.embed_token("tired"), stub.embed_token("exhausted"));
  EXPECT_GT(c, 0.8);
  EXPECT_NEAR(c, 0.9, 1e-12);
}

TEST(Embed, StubUnrelatedTokensAreOrthogonal) {
  StubEmbedder stub;
  EXPECT_DOUBLE_EQ(cosine(stub.embed_token("breakfast"), stub.embed_token("sleep")), 0.0);
}

TEST(Embed, StubLoadsSynonymTable) {
  const auto path = std::filesystem::temp_directory_path() / "miforge_synonyms.txt";
  {
    std::ofstream out(path);
    out << "# comment\nTired exhausted\nsad down 0.4\n";
  }
  StubEmbedder stub;
  stub.load_synonyms(path);
  EXPECT_NEAR(cosine(stub.embed_token("tired"), stub.embed_token("exhausted")), 0.9, 1e-12);
  EXPECT_NEAR(cosine(stub.embed_token("sad"), stub.embed_token("down")), 0.4, 1e-12);
  std::filesystem::remove(path);
}

TEST(Embed, EmptyBatchIsRejected) {
  Backend backend(std::make_shared<ScriptedProvider>(), std::make_shared<StubEmbedder>());
  EXPECT_THROW(backend.embed({}), ValidationError);
}

// --- wire protocols against an in-process server -------------------------

class HttpFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      last_body_ = json::parse(req.body);
      last_auth_ = req.get_header_value("Authorization");
      json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "openai says hi"}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    server_.Post("/api/chat", [this](const httplib::Request& req, httplib::Response& res) {
      last_body_ = json::parse(req.body);
      json reply = {{"message", {{"role", "assistant"}, {"content", "ollama says hi"}}}, {"done", true}};
      res.set_content(reply.dump(), "application/json");
    });
    server_.Post("/api/embeddings", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = json::parse(req.body);
      const double x = static_cast<double>(body["prompt"].get<std::string>().size());
      res.set_content(json{{"embedding", {x, 1.0, 0.0}}}.dump(), "application/json");
    });
    server_.Post("/v1/embeddings", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = json::parse(req.body);
      json data = json::array();
      for (const auto& t : body["input"]) {
        data.push_back({{"embedding", {static_cast<double>(t.get<std::string>().size()), 2.0}}});
      }
      res.set_content(json{{"data", data}}.dump(), "application/json");
    });
    server_.Post("/broken/v1/chat/completions", [](const httplib::Request&, httplib::Response& res) {
      res.status = 500;
      res.set_content("boom", "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  std::string base() const { return "http://127.0.0.1:" + std::to_string(port_); }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  json last_body_;
  std::string last_auth_;
};

TEST_F(HttpFixture, OpenAICompatibleChat) {
  HttpSettings s{WireProtocol::openai, base(), "test-model", "", "secret", 5};
  HttpChatProvider provider(s);
  auto request = selector_like();
  EXPECT_EQ(provider.complete(request), "openai says hi");
  EXPECT_EQ(last_body_["model"], "test-model");
  EXPECT_EQ(last_body_["messages"][0]["role"], "system");
  EXPECT_DOUBLE_EQ(last_body_["temperature"].get<double>(), 0.7);
  EXPECT_DOUBLE_EQ(last_body_["top_p"].get<double>(), 0.9);
  EXPECT_EQ(last_body_["response_format"]["type"], "json_object");
  EXPECT_EQ(last_auth_, "Bearer secret");
}

TEST_F(HttpFixture, BaseUrlEndingInV1IsAccepted) {
  HttpChatProvider provider({WireProtocol::openai, base() + "/v1", "m", "", "", 5});
  EXPECT_EQ(provider.complete(simple_request("x")), "openai says hi");
}

TEST_F(HttpFixture, OllamaChatAndEmbeddings) {
  HttpSettings s{WireProtocol::ollama, base(), "llama", "minilm", "", 5};
  HttpChatProvider chat(s);
  auto request = selector_like();
  EXPECT_EQ(chat.complete(request), "ollama says hi");
  EXPECT_EQ(last_body_["stream"], false);
  EXPECT_EQ(last_body_["format"], orchestrator::selector_schema());
  EXPECT_DOUBLE_EQ(last_body_["options"]["temperature"].get<double>(), 0.7);

  HttpEmbeddingProvider embed(s);
  const std::vector<std::string> texts{"ab", "abcd"};
  const auto v = embed.embed(texts);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[1].values, (std::vector<double>{4.0, 1.0, 0.0}));
}

TEST_F(HttpFixture, OpenAIEmbeddingsBatch) {
  HttpEmbeddingProvider embed({WireProtocol::openai, base(), "m", "e", "", 5});
  const std::vector<std::string> texts{"a", "abc"};
  const auto v = embed.embed(texts);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[1].values, (std::vector<double>{3.0, 2.0}));
}

TEST_F(HttpFixture, ServerErrorBecomesTransportErrorAfterRetries) {
  auto provider = std::make_shared<HttpChatProvider>(
      HttpSettings{WireProtocol::openai, base() + "/broken", "m", "", "", 5});
  Backend backend(provider);
  auto request = simple_request("x");
  request.params.max_retries = 2;
  try {
    backend.chat(request);
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_NE(std::string(e.what()).find("500"), std::string::npos);
  }
}

TEST(Http, UnreachableHostIsTransportError) {
  HttpChatProvider provider({WireProtocol::openai, "http://127.0.0.1:1", "m", "", "", 2});
  EXPECT_THROW(provider.complete(simple_request("x")), TransportError);
}
