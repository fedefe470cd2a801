#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "miforge/backend/provider.h"
#include "miforge/backend/types.h"

namespace miforge::backend {

/// One logical backend call (a whole retry chain).
struct CallEvent {
  std::string session_id;
  int session_seq = 0;  // ordinal among this session's calls
  CallRole role = CallRole::other;
  int turn = -1;
  std::string prompt_hash;
  int attempts = 1;
  bool ok = true;
  int counted = 1;  // contribution to call_count()
  std::string note;
};

void to_json(nlohmann::json& j, const CallEvent& e);
void from_json(const nlohmann::json& j, CallEvent& e);

/// Retrying, counting front end over a chat provider and an optional
/// embedding provider.
///
/// call_count() grows by one per successful call (however many retries it
/// took) and by the attempt count of a call that finally fails. Embedding
/// calls are counted separately. Safe to share across session threads.
class Backend {
 public:
  explicit Backend(std::shared_ptr<ChatProvider> chat,
                   std::shared_ptr<EmbeddingProvider> embedder = nullptr);

  std::string chat(const ChatRequest& request);

  /// Parses and schema-checks the reply, re-prompting with a repair
  /// instruction up to params.max_retries times.
  nlohmann::json chat_structured(const ChatRequest& request);

  std::vector<EmbeddingVector> embed(std::span<const std::string> texts);

  long call_count() const { return calls_.load(); }
  long embed_call_count() const { return embed_calls_.load(); }

  std::vector<CallEvent> events() const;
  std::vector<CallEvent> events_for(const std::string& session_id) const;
  int call_count_for(const std::string& session_id) const;

  /// Non-call diagnostics (e.g. monitor fail-open) land in the event log
  /// with counted = 0.
  void record_warning(const ChatRequest& request, std::string note);

  std::string model_name() const;
  bool has_embedder() const { return embedder_ != nullptr; }

 private:
  void record(const ChatRequest& request, int attempts, bool ok, int counted, std::string note);

  std::shared_ptr<ChatProvider> chat_;
  std::shared_ptr<EmbeddingProvider> embedder_;
  std::atomic<long> calls_{0};
  std::atomic<long> embed_calls_{0};
  mutable std::mutex mutex_;
  std::vector<CallEvent> events_;
  std::map<std::string, int> session_seq_;
};

inline constexpr const char* kRepairInstruction = "Return only valid JSON matching the schema.";

}  // namespace miforge::backend
