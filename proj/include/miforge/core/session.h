#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "miforge/core/dialogue.h"
#include "miforge/core/profile.h"

namespace miforge {

struct Ablation {
  bool story_used = true;
  bool mi_code_used = true;

  friend bool operator==(const Ablation&, const Ablation&) = default;
};

struct SessionParams {
  double temperature = 0.7;
  double top_p = 0.9;
  int t_min = 10;
  int t_max = 40;
  int context_window_k = 5;

  friend bool operator==(const SessionParams&, const SessionParams&) = default;
};

struct SessionRecord {
  std::string session_id;
  std::string profile_ref;
  std::string story_ref;
  std::string model_name;
  std::vector<Utterance> utterances;
  Ablation ablation;
  SessionParams generation_params;
  int llm_call_count = 0;
  bool completed = false;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

void validate(const SessionRecord& record);

// JSON forms used by every JSONL file the pipeline writes.
void to_json(nlohmann::json& j, const Utterance& u);
void from_json(const nlohmann::json& j, Utterance& u);
void to_json(nlohmann::json& j, const Ablation& a);
void from_json(const nlohmann::json& j, Ablation& a);
void to_json(nlohmann::json& j, const SessionParams& p);
void from_json(const nlohmann::json& j, SessionParams& p);
void to_json(nlohmann::json& j, const SessionRecord& r);
void from_json(const nlohmann::json& j, SessionRecord& r);
void to_json(nlohmann::json& j, const ClientProfile& p);
void from_json(const nlohmann::json& j, ClientProfile& p);
void to_json(nlohmann::json& j, const SituationalStory& s);
void from_json(const nlohmann::json& j, SituationalStory& s);

}  // namespace miforge

namespace nlohmann {
template <>
struct adl_serializer<miforge::MICode> {
  static void to_json(json& j, const miforge::MICode& code) { j = code.to_string(); }
  static miforge::MICode from_json(const json& j) {
    return miforge::MICode::parse(j.get<std::string>());
  }
};
}  // namespace nlohmann
