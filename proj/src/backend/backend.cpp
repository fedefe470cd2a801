#include "miforge/backend/backend.h"

#include <cmath>

#include <spdlog/spdlog.h>

#include "miforge/backend/errors.h"
#include "miforge/backend/json_schema.h"
#include "miforge/core/errors.h"
#include "miforge/core/text.h"

namespace miforge::backend {

using nlohmann::json;

void to_json(json& j, const CallEvent& e) {
  j = json{{"session_id", e.session_id}, {"session_seq", e.session_seq},
           {"role", to_string(e.role)},  {"turn", e.turn},
           {"prompt_hash", e.prompt_hash}, {"attempts", e.attempts},
           {"ok", e.ok},                 {"counted", e.counted}};
  if (!e.note.empty()) j["note"] = e.note;
}

void from_json(const json& j, CallEvent& e) {
  e.session_id = j.at("session_id").get<std::string>();
  e.session_seq = j.at("session_seq").get<int>();
  e.role = call_role_from_string(j.at("role").get<std::string>());
  e.turn = j.at("turn").get<int>();
  e.prompt_hash = j.at("prompt_hash").get<std::string>();
  e.attempts = j.at("attempts").get<int>();
  e.ok = j.at("ok").get<bool>();
  e.counted = j.at("counted").get<int>();
  e.note = j.value("note", std::string{});
}

Backend::Backend(std::shared_ptr<ChatProvider> chat, std::shared_ptr<EmbeddingProvider> embedder)
    : chat_(std::move(chat)), embedder_(std::move(embedder)) {
  if (!chat_) throw ValidationError("backend needs a chat provider");
}

std::string Backend::model_name() const { return chat_->model_name(); }

void Backend::record(const ChatRequest& request, int attempts, bool ok, int counted,
                     std::string note) {
  calls_ += counted;
  std::lock_guard lock(mutex_);
  CallEvent e;
  e.session_id = request.session_id;
  e.session_seq = session_seq_[request.session_id]++;
  e.role = request.role;
  e.turn = request.turn;
  e.prompt_hash = prompt_hash(request);
  e.attempts = attempts;
  e.ok = ok;
  e.counted = counted;
  e.note = std::move(note);
  events_.push_back(std::move(e));
}

void Backend::record_warning(const ChatRequest& request, std::string note) {
  spdlog::warn("[{}] {}", request.session_id, note);
  record(request, 0, false, 0, std::move(note));
}

std::string Backend::chat(const ChatRequest& request) {
  validate(request);
  const int budget = request.params.max_retries + 1;
  std::string last_error;
  bool last_was_empty = false;
  for (int attempt = 1; attempt <= budget; ++attempt) {
    try {
      std::string reply = chat_->complete(request);
      if (!text::trim(reply).empty()) {
        record(request, attempt, true, 1, {});
        return reply;
      }
      last_was_empty = true;
      last_error = "empty completion";
    } catch (const TransportError& e) {
      last_was_empty = false;
      last_error = e.what();
    }
  }
  record(request, budget, false, budget, last_error);
  if (last_was_empty) {
    throw EmptyCompletionError("empty completion after " + std::to_string(budget) + " attempts",
                               budget);
  }
  throw TransportError(last_error + " (after " + std::to_string(budget) + " attempts)", budget);
}

json Backend::chat_structured(const ChatRequest& request) {
  if (!request.json_schema) throw ValidationError("chat_structured requires a json_schema");
  validate(request);
  const int budget = request.params.max_retries + 1;
  ChatRequest current = request;
  std::string raw;
  std::string problem;
  for (int attempt = 1; attempt <= budget; ++attempt) {
    try {
      raw = chat_->complete(current);
    } catch (const TransportError& e) {
      problem = e.what();
      continue;
    }
    auto parsed = extract_json(raw);
    if (!parsed) {
      problem = "reply is not valid JSON";
    } else if (auto violation = schema_violation(*request.json_schema, *parsed)) {
      problem = *violation;
    } else {
      record(request, attempt, true, 1, {});
      return *parsed;
    }
    current.messages.push_back(Message{"assistant", raw.empty() ? std::string("(empty)") : raw});
    current.messages.push_back(
        Message{"user", std::string(kRepairInstruction) + " Validation error: " + problem});
  }
  record(request, budget, false, budget, problem);
  throw StructuredOutputError("structured output invalid after " + std::to_string(budget) +
                                  " attempts: " + problem,
                              raw, budget);
}

std::vector<EmbeddingVector> Backend::embed(std::span<const std::string> texts) {
  if (!embedder_) throw ValidationError("backend has no embedding provider");
  if (texts.empty()) throw ValidationError("embed needs at least one text");
  ++embed_calls_;
  auto vectors = embedder_->embed(texts);
  if (vectors.size() != texts.size()) {
    throw TransportError("embedder returned " + std::to_string(vectors.size()) + " vectors for " +
                         std::to_string(texts.size()) + " texts");
  }
  for (const auto& v : vectors) {
    if (v.dimension() != vectors.front().dimension() || v.dimension() == 0) {
      throw TransportError("embedding dimension mismatch within batch");
    }
    for (double x : v.values) {
      if (!std::isfinite(x)) throw TransportError("embedder returned a non-finite value");
    }
  }
  return vectors;
}

std::vector<CallEvent> Backend::events() const {
  std::lock_guard lock(mutex_);
  return events_;
}

std::vector<CallEvent> Backend::events_for(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  std::vector<CallEvent> out;
  for (const auto& e : events_) {
    if (e.session_id == session_id) out.push_back(e);
  }
  return out;
}

int Backend::call_count_for(const std::string& session_id) const {
  int total = 0;
  for (const auto& e : events_for(session_id)) total += e.counted;
  return total;
}

}  // namespace miforge::backend
