#pragma once

#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "miforge/backend/provider.h"

namespace miforge::backend {

/// Computes a reply from the request alone; nullopt means "no answer".
using Responder = std::function<std::optional<std::string>(const ChatRequest&)>;

/// Offline chat provider for tests and dry runs.
///
/// Lookup order: fixture keyed on prompt hash, then the per-role FIFO queue,
/// then the fallback responder. With only fixtures and a pure responder the
/// provider is a pure function of the prompt.
class ScriptedProvider : public ChatProvider {
 public:
  explicit ScriptedProvider(std::string model = "scripted");

  void add_fixture(std::string prompt_hash, std::string response);
  /// JSONL of {"prompt_hash": ..., "response": ...}.
  void load_fixtures(const std::filesystem::path& path);

  void push(CallRole role, std::string response);
  /// Queues a simulated transport failure for the role.
  void push_failure(CallRole role);
  void set_fallback(Responder responder);

  std::string complete(const ChatRequest& request) override;
  std::string model_name() const override { return model_; }

  /// Every request seen, in arrival order.
  std::vector<ChatRequest> captured() const;
  void clear_captured();

 private:
  std::string model_;
  std::map<std::string, std::string> fixtures_;
  std::map<CallRole, std::deque<std::optional<std::string>>> queues_;
  Responder fallback_;
  mutable std::mutex mutex_;
  std::vector<ChatRequest> captured_;
};

/// Deterministic role-aware responder producing plausible replies for every
/// agent prompt (profiles, stories, client/therapist turns, selector,
/// monitor, judge). Output depends only on the request and `seed`.
Responder synthetic_responder(std::uint64_t seed = 0);

}  // namespace miforge::backend
