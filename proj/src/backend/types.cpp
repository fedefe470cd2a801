#include "miforge/backend/types.h"

#include <array>
#include <cmath>
#include <utility>

#include "miforge/core/errors.h"
#include "miforge/core/text.h"

namespace miforge::backend {

namespace {

constexpr std::array<std::pair<std::string_view, CallRole>, 9> kRoles{{
    {"greeting", CallRole::greeting},
    {"client", CallRole::client},
    {"selector", CallRole::selector},
    {"therapist", CallRole::therapist},
    {"monitor", CallRole::monitor},
    {"profile", CallRole::profile},
    {"story", CallRole::story},
    {"judge", CallRole::judge},
    {"other", CallRole::other},
}};

}  // namespace

std::string_view to_string(CallRole role) {
  for (const auto& [name, value] : kRoles) {
    if (value == role) return name;
  }
  return "other";
}

CallRole call_role_from_string(std::string_view name) {
  for (const auto& [n, value] : kRoles) {
    if (n == name) return value;
  }
  throw ValidationError("unknown call role '" + std::string(name) + "'");
}

std::string prompt_text(const ChatRequest& request) {
  std::string out = "[system]\n" + request.system_prompt;
  for (const auto& m : request.messages) {
    out += "\n[" + m.role + "]\n" + m.content;
  }
  return out;
}

std::string prompt_hash(const ChatRequest& request) {
  return text::hex64(text::fnv1a(prompt_text(request)));
}

void validate(const ChatRequest& request) {
  if (request.messages.empty()) throw ValidationError("chat request has no messages");
  for (std::size_t i = 0; i < request.messages.size(); ++i) {
    const std::string& expected = (i % 2 == 0) ? "user" : "assistant";
    if (request.messages[i].role != expected) {
      throw ValidationError("message " + std::to_string(i) + " has role '" +
                            request.messages[i].role + "', expected '" + expected + "'");
    }
  }
  if (request.params.temperature < 0.0) throw ValidationError("temperature must be >= 0");
  if (!(request.params.top_p > 0.0 && request.params.top_p <= 1.0)) {
    throw ValidationError("top_p must be in (0, 1]");
  }
  if (request.params.max_retries < 0) throw ValidationError("max_retries must be >= 0");
}

double norm(const EmbeddingVector& v) {
  double s = 0.0;
  for (double x : v.values) s += x * x;
  return std::sqrt(s);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    throw ValidationError("embedding dimension mismatch");
  }
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw UndefinedMetricError("zero-norm embedding");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) dot += a.values[i] * b.values[i];
  return dot / (na * nb);
}

}  // namespace miforge::backend
