#include "miforge/core/session.h"

#include "miforge/core/errors.h"

namespace miforge {

using nlohmann::json;

void validate(const SessionRecord& record) {
  if (record.session_id.empty()) throw ValidationError("session_id is empty");
  if (record.utterances.empty()) throw ValidationError("session has no utterances");
  for (std::size_t i = 0; i < record.utterances.size(); ++i) {
    const auto& u = record.utterances[i];
    validate(u);
    if (u.turn_index != static_cast<int>(i)) {
      throw ValidationError("utterance " + std::to_string(i) + " has turn_index " +
                            std::to_string(u.turn_index));
    }
  }
  if (record.llm_call_count < 0) throw ValidationError("negative llm_call_count");
}

void to_json(json& j, const Utterance& u) {
  j = json{{"speaker", to_string(u.speaker)},
           {"text", u.text},
           {"code", u.code},
           {"turn_index", u.turn_index}};
  if (u.classified_code) j["classified_code"] = *u.classified_code;
}

void from_json(const json& j, Utterance& u) {
  const auto speaker = j.at("speaker").get<std::string>();
  if (speaker == "therapist") {
    u.speaker = Speaker::therapist;
  } else if (speaker == "client") {
    u.speaker = Speaker::client;
  } else {
    throw ValidationError("unknown speaker '" + speaker + "'");
  }
  u.text = j.at("text").get<std::string>();
  u.code = j.at("code").get<MICode>();
  u.turn_index = j.at("turn_index").get<int>();
  if (auto it = j.find("classified_code"); it != j.end() && !it->is_null()) {
    u.classified_code = it->get<MICode>();
  } else {
    u.classified_code.reset();
  }
}

void to_json(json& j, const Ablation& a) {
  j = json{{"story_used", a.story_used}, {"mi_code_used", a.mi_code_used}};
}

void from_json(const json& j, Ablation& a) {
  a.story_used = j.at("story_used").get<bool>();
  a.mi_code_used = j.at("mi_code_used").get<bool>();
}

void to_json(json& j, const SessionParams& p) {
  j = json{{"temperature", p.temperature},
           {"top_p", p.top_p},
           {"t_min", p.t_min},
           {"t_max", p.t_max},
           {"context_window_k", p.context_window_k}};
}

void from_json(const json& j, SessionParams& p) {
  p.temperature = j.at("temperature").get<double>();
  p.top_p = j.at("top_p").get<double>();
  p.t_min = j.at("t_min").get<int>();
  p.t_max = j.at("t_max").get<int>();
  p.context_window_k = j.at("context_window_k").get<int>();
}

void to_json(json& j, const SessionRecord& r) {
  j = json{{"session_id", r.session_id},
           {"profile_ref", r.profile_ref},
           {"story_ref", r.story_ref},
           {"model_name", r.model_name},
           {"utterances", r.utterances},
           {"ablation", r.ablation},
           {"generation_params", r.generation_params},
           {"llm_call_count", r.llm_call_count},
           {"completed", r.completed}};
}

void from_json(const json& j, SessionRecord& r) {
  r.session_id = j.at("session_id").get<std::string>();
  r.profile_ref = j.at("profile_ref").get<std::string>();
  r.story_ref = j.at("story_ref").get<std::string>();
  r.model_name = j.at("model_name").get<std::string>();
  r.utterances = j.at("utterances").get<std::vector<Utterance>>();
  r.ablation = j.at("ablation").get<Ablation>();
  r.generation_params = j.at("generation_params").get<SessionParams>();
  r.llm_call_count = j.at("llm_call_count").get<int>();
  r.completed = j.value("completed", false);
}

void to_json(json& j, const ClientProfile& p) {
  j = json{{"identity", p.identity},
           {"age", p.age},
           {"gender", p.gender},
           {"scores", p.scores},
           {"explanations", p.explanations},
           {"item_domains", p.item_domains}};
}

void from_json(const json& j, ClientProfile& p) {
  p.identity = j.at("identity").get<std::string>();
  p.age = j.at("age").get<int>();
  p.gender = j.value("gender", std::string{});
  p.scores = j.at("scores").get<std::vector<int>>();
  p.explanations = j.at("explanations").get<std::vector<std::string>>();
  p.item_domains = j.at("item_domains").get<std::vector<std::string>>();
}

void to_json(json& j, const SituationalStory& s) {
  j = json{{"profile_id", s.profile_id},
           {"text", s.text},
           {"word_count", s.word_count},
           {"primary_symptom", s.primary_symptom}};
}

void from_json(const json& j, SituationalStory& s) {
  s.profile_id = j.at("profile_id").get<std::string>();
  s.text = j.at("text").get<std::string>();
  s.word_count = j.at("word_count").get<int>();
  s.primary_symptom = j.at("primary_symptom").get<std::string>();
}

}  // namespace miforge
