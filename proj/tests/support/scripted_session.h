#pragma once

#include <memory>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "miforge/backend/backend.h"
#include "miforge/backend/scripted.h"
#include "miforge/core/profile.h"
#include "miforge/profiler/instrument.h"

namespace miforge::test_support {

/// Replies for a whole session: the monitor says "complete" once the turn
/// reaches `complete_at` (never when <= 0). Selector codes come from a
/// generator seeded with `seed`, or are fixed (change, reflection) when
/// seed is 0.
inline backend::Responder session_responder(int complete_at, std::uint64_t seed = 0) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  auto mutex = std::make_shared<std::mutex>();
  return [=](const backend::ChatRequest& r) -> std::optional<std::string> {
    using backend::CallRole;
    switch (r.role) {
      case CallRole::greeting:
        return std::string("Hello, welcome. What brings you in today?");
      case CallRole::client:
        return "I have been thinking about exchange " + std::to_string(r.turn) + " a lot.";
      case CallRole::therapist:
        return "You have been carrying that since exchange " + std::to_string(r.turn) + ".";
      case CallRole::selector: {
        if (seed == 0) {
          return std::string(R"({"client_mi_code":"change","therapist_mi_code":"reflection"})");
        }
        static const char* kClient[] = {"change", "sustain", "neutral"};
        static const char* kTherapist[] = {"reflection", "question", "therapist_input"};
        std::lock_guard lock(*mutex);
        nlohmann::json j{{"client_mi_code", kClient[(*rng)() % 3]},
                         {"therapist_mi_code", kTherapist[(*rng)() % 3]}};
        return j.dump();
      }
      case CallRole::monitor: {
        const bool done = complete_at > 0 && r.turn >= complete_at;
        return std::string(done ? R"({"result":"complete","reason":"farewell"})"
                                : R"({"result":"continue","reason":"ongoing"})");
      }
      default:
        return std::nullopt;
    }
  };
}

inline ClientProfile sample_profile(const std::string& id = "client-1") {
  const auto& instrument = profiler::default_instrument();
  ClientProfile p;
  p.identity = id;
  p.age = 34;
  p.gender = "female";
  p.item_domains = instrument.item_domains();
  for (std::size_t i = 0; i < kItemCount; ++i) {
    p.scores.push_back(static_cast<int>(i % 3));
    p.explanations.push_back("I notice item " + std::to_string(i + 1) + " sometimes.");
  }
  return p;
}

inline SituationalStory sample_story(const std::string& id = "client-1") {
  SituationalStory s;
  s.profile_id = id;
  s.text = "I sit at my desk and stare at the screen. My coffee goes cold.";
  s.word_count = count_words(s.text);
  s.primary_symptom = "depression";
  return s;
}

}  // namespace miforge::test_support
