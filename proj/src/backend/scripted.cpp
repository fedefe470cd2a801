#include "miforge/backend/scripted.h"

#include <fstream>

#include <nlohmann/json.hpp>

#include "miforge/backend/errors.h"
#include "miforge/core/errors.h"

namespace miforge::backend {

ScriptedProvider::ScriptedProvider(std::string model) : model_(std::move(model)) {}

void ScriptedProvider::add_fixture(std::string hash, std::string response) {
  std::lock_guard lock(mutex_);
  fixtures_[std::move(hash)] = std::move(response);
}

void ScriptedProvider::load_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open fixture file " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("prompt_hash") || !j.contains("response")) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected {prompt_hash, response}");
    }
    add_fixture(j["prompt_hash"].get<std::string>(), j["response"].get<std::string>());
  }
}

void ScriptedProvider::push(CallRole role, std::string response) {
  std::lock_guard lock(mutex_);
  queues_[role].push_back(std::move(response));
}

void ScriptedProvider::push_failure(CallRole role) {
  std::lock_guard lock(mutex_);
  queues_[role].push_back(std::nullopt);
}

void ScriptedProvider::set_fallback(Responder responder) {
  std::lock_guard lock(mutex_);
  fallback_ = std::move(responder);
}

std::string ScriptedProvider::complete(const ChatRequest& request) {
  Responder fallback;
  {
    std::lock_guard lock(mutex_);
    captured_.push_back(request);
    if (auto it = fixtures_.find(prompt_hash(request)); it != fixtures_.end()) return it->second;
    if (auto q = queues_.find(request.role); q != queues_.end() && !q->second.empty()) {
      auto next = std::move(q->second.front());
      q->second.pop_front();
      if (!next) throw TransportError("scripted transport failure");
      return *next;
    }
    fallback = fallback_;
  }
  if (fallback) {
    if (auto reply = fallback(request)) return *reply;
  }
  throw TransportError("no scripted response for " + std::string(to_string(request.role)) +
                       " prompt " + prompt_hash(request));
}

std::vector<ChatRequest> ScriptedProvider::captured() const {
  std::lock_guard lock(mutex_);
  return captured_;
}

void ScriptedProvider::clear_captured() {
  std::lock_guard lock(mutex_);
  captured_.clear();
}

}  // namespace miforge::backend
