#pragma once

#include <string>

#include "miforge/backend/provider.h"

namespace miforge::backend {

enum class WireProtocol { openai, ollama };

WireProtocol wire_protocol_from_string(const std::string& name);

struct HttpSettings {
  WireProtocol protocol = WireProtocol::openai;
  /// scheme://host[:port][/prefix]
  std::string base_url = "http://localhost:11434";
  std::string model;
  std::string embedding_model;
  std::string api_key;
  int timeout_seconds = 120;
};

/// Chat over an OpenAI-compatible (POST /v1/chat/completions) or an
/// Ollama-style (POST /api/chat) endpoint. One attempt per call; retries
/// belong to Backend.
class HttpChatProvider : public ChatProvider {
 public:
  explicit HttpChatProvider(HttpSettings settings);
  std::string complete(const ChatRequest& request) override;
  std::string model_name() const override { return settings_.model; }

  /// Request body this provider would send.
  nlohmann::json request_body(const ChatRequest& request) const;

 private:
  HttpSettings settings_;
};

/// Embeddings over POST /v1/embeddings or POST /api/embeddings.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(HttpSettings settings);
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

 private:
  HttpSettings settings_;
};

}  // namespace miforge::backend
