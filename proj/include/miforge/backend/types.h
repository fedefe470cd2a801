#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace miforge::backend {

struct GenerationParams {
  double temperature = 0.7;
  double top_p = 0.9;
  int max_retries = 3;

  friend bool operator==(const GenerationParams&, const GenerationParams&) = default;
};

/// Which agent or pipeline step issued a request. Recorded in the event log.
enum class CallRole { greeting, client, selector, therapist, monitor, profile, story, judge, other };

std::string_view to_string(CallRole role);
CallRole call_role_from_string(std::string_view name);

struct Message {
  std::string role;  // "user" or "assistant"
  std::string content;
};

struct ChatRequest {
  std::string system_prompt;
  std::vector<Message> messages;
  /// JSON Schema subset the reply must satisfy (chat_structured only).
  std::optional<nlohmann::json> json_schema;
  GenerationParams params;

  // Bookkeeping, not part of the prompt.
  CallRole role = CallRole::other;
  std::string session_id;
  int turn = -1;
};

/// Stable hash of the prompt content (system prompt + messages).
std::string prompt_hash(const ChatRequest& request);

/// Full prompt text, as a provider would see it. Used for prompt captures.
std::string prompt_text(const ChatRequest& request);

/// Throws ValidationError on an empty message list, a non-user first
/// message, or non-alternating roles.
void validate(const ChatRequest& request);

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dimension() const { return values.size(); }
};

double cosine(const EmbeddingVector& a, const EmbeddingVector& b);
double norm(const EmbeddingVector& v);

}  // namespace miforge::backend
