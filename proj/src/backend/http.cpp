#include "miforge/backend/http.h"

#include <cmath>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "miforge/backend/errors.h"
#include "miforge/core/errors.h"

namespace miforge::backend {

using nlohmann::json;

namespace {

struct Endpoint {
  std::string origin;  // scheme://host:port
  std::string prefix;  // path prefix without trailing '/'
};

Endpoint split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  auto path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  Endpoint e;
  e.origin = url.substr(0, path_start);
  if (path_start != std::string::npos) e.prefix = url.substr(path_start);
  while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
  return e;
}

std::string join_path(const Endpoint& e, const std::string& path) {
  // Accept base URLs that already end in /v1.
  if (path.rfind("/v1/", 0) == 0 && e.prefix.size() >= 3 &&
      e.prefix.compare(e.prefix.size() - 3, 3, "/v1") == 0) {
    return e.prefix + path.substr(3);
  }
  return e.prefix + path;
}

json post_json(const HttpSettings& settings, const std::string& path, const json& body) {
  const Endpoint endpoint = split_url(settings.base_url);
  httplib::Client client(endpoint.origin);
  client.set_connection_timeout(std::min(settings.timeout_seconds, 10), 0);
  client.set_read_timeout(settings.timeout_seconds, 0);
  client.set_write_timeout(settings.timeout_seconds, 0);
  httplib::Headers headers;
  if (!settings.api_key.empty()) headers.emplace("Authorization", "Bearer " + settings.api_key);
  auto result = client.Post(join_path(endpoint, path), headers, body.dump(), "application/json");
  if (!result) {
    throw TransportError("POST " + path + " failed: " + httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    throw TransportError("POST " + path + " returned HTTP " + std::to_string(result->status) +
                         ": " + result->body.substr(0, 200));
  }
  auto parsed = json::parse(result->body, nullptr, false);
  if (parsed.is_discarded()) throw TransportError("POST " + path + " returned non-JSON body");
  return parsed;
}

json messages_json(const ChatRequest& request) {
  json messages = json::array();
  if (!request.system_prompt.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
  }
  for (const auto& m : request.messages) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  return messages;
}

EmbeddingVector to_vector(const json& values) {
  EmbeddingVector v;
  v.values = values.get<std::vector<double>>();
  for (double x : v.values) {
    if (!std::isfinite(x)) throw TransportError("embedding contains a non-finite value");
  }
  return v;
}

}  // namespace

WireProtocol wire_protocol_from_string(const std::string& name) {
  if (name == "openai") return WireProtocol::openai;
  if (name == "ollama") return WireProtocol::ollama;
  throw ValidationError("unknown wire protocol '" + name + "'");
}

HttpChatProvider::HttpChatProvider(HttpSettings settings) : settings_(std::move(settings)) {
  if (settings_.model.empty()) throw ValidationError("http chat provider needs a model name");
}

json HttpChatProvider::request_body(const ChatRequest& request) const {
  json body{{"model", settings_.model}, {"messages", messages_json(request)}};
  if (settings_.protocol == WireProtocol::openai) {
    body["temperature"] = request.params.temperature;
    body["top_p"] = request.params.top_p;
    if (request.json_schema) body["response_format"] = {{"type", "json_object"}};
  } else {
    body["stream"] = false;
    body["options"] = {{"temperature", request.params.temperature},
                       {"top_p", request.params.top_p}};
    if (request.json_schema) body["format"] = *request.json_schema;
  }
  return body;
}

std::string HttpChatProvider::complete(const ChatRequest& request) {
  const json body = request_body(request);
  if (settings_.protocol == WireProtocol::openai) {
    const json reply = post_json(settings_, "/v1/chat/completions", body);
    try {
      const auto& content = reply.at("choices").at(0).at("message").at("content");
      return content.is_null() ? std::string{} : content.get<std::string>();
    } catch (const json::exception& e) {
      throw TransportError(std::string("malformed chat completion: ") + e.what());
    }
  }
  const json reply = post_json(settings_, "/api/chat", body);
  try {
    return reply.at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed ollama chat reply: ") + e.what());
  }
}

HttpEmbeddingProvider::HttpEmbeddingProvider(HttpSettings settings)
    : settings_(std::move(settings)) {
  if (settings_.embedding_model.empty()) {
    throw ValidationError("http embedding provider needs an embedding model name");
  }
}

std::vector<EmbeddingVector> HttpEmbeddingProvider::embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  try {
    if (settings_.protocol == WireProtocol::openai) {
      json body{{"model", settings_.embedding_model}, {"input", json(std::vector<std::string>(texts.begin(), texts.end()))}};
      const json reply = post_json(settings_, "/v1/embeddings", body);
      for (const auto& item : reply.at("data")) out.push_back(to_vector(item.at("embedding")));
    } else {
      for (const auto& t : texts) {
        json body{{"model", settings_.embedding_model}, {"prompt", t}};
        const json reply = post_json(settings_, "/api/embeddings", body);
        out.push_back(to_vector(reply.at("embedding")));
      }
    }
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed embedding reply: ") + e.what());
  }
  return out;
}

}  // namespace miforge::backend
