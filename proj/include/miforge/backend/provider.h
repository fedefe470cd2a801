#pragma once

#include <span>
#include <string>
#include <vector>

#include "miforge/backend/types.h"

namespace miforge::backend {

/// One attempt at a chat completion. Implementations throw TransportError on
/// failure and must tolerate concurrent calls.
class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
  virtual std::string model_name() const = 0;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) = 0;
};

}  // namespace miforge::backend
