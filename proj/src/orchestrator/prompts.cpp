#include "miforge/orchestrator/prompts.h"

namespace miforge::orchestrator {

using nlohmann::json;

namespace {

std::string speaker_label(Speaker s) { return s == Speaker::therapist ? "Therapist" : "Client"; }

std::string line_for(const Utterance& u, bool with_codes) {
  std::string line = speaker_label(u.speaker);
  if (with_codes) line += " [" + u.code.to_string() + "]";
  return line + ": " + u.text;
}

std::string client_code_token(Category c) { return std::string(MICode::client(c).token()); }
std::string therapist_code_token(Category c) { return std::string(MICode::therapist(c).token()); }

}  // namespace

const std::string& mi_code_definitions() {
  static const std::string kDefinitions =
      "Therapist codes:\n"
      "- reflection: mirrors back the essence of what the client said; simple reflections "
      "restate, complex reflections add meaning or summarize.\n"
      "- question: seeks clarity or explores the client's view; open questions invite "
      "elaboration, closed questions expect yes/no or a brief answer.\n"
      "- therapist_input: neither reflection nor question; giving information, advice, "
      "affirmation, or goal-setting.\n"
      "Client codes:\n"
      "- change: language favoring change (desire, ability, reasons, need, commitment, "
      "taking steps).\n"
      "- sustain: language opposing change or favoring the status quo.\n"
      "- neutral: no directional motivational content.";
  return kDefinitions;
}

std::string render_window(const DialogueState& state, int k) {
  const auto window = recent_exchanges(state, k);
  const auto all = recent_exchanges(state, -1);
  std::string out;
  const auto& history = state.history();
  if (!history.empty() && history.front().speaker == Speaker::therapist &&
      all.size() <= static_cast<std::size_t>(k)) {
    out += line_for(history.front(), false);
  }
  for (const auto& ex : window) {
    if (!out.empty()) out += '\n';
    out += line_for(*ex.client, false);
    if (ex.therapist) out += '\n' + line_for(*ex.therapist, false);
  }
  return out;
}

std::string render_transcript(const std::vector<Utterance>& history, bool with_codes) {
  std::string out;
  for (const auto& u : history) {
    if (!out.empty()) out += '\n';
    out += line_for(u, with_codes);
  }
  return out;
}

backend::ChatRequest greeting_request() {
  backend::ChatRequest r;
  r.system_prompt = "You are an experienced psychotherapist skilled in MI techniques.";
  r.messages.push_back({"user",
                        "Open the counseling session with a brief, warm greeting and invite the "
                        "client to share what brings them in. Return only the therapist "
                        "utterance."});
  return r;
}

backend::ChatRequest client_request(const DialogueState& state, int k,
                                    const ClientProfile& profile, const SituationalStory* story,
                                    std::optional<Category> target_code) {
  backend::ChatRequest r;
  std::string persona;
  if (story) {
    persona = "This is your story/past traumatic experience: " + story->text + ".";
  } else {
    persona = "This is how you have been feeling lately, in your own words:";
    for (const auto& e : profile.explanations) persona += "\n- " + e;
  }
  r.system_prompt = "You are a client receiving psychological counseling. " + persona +
                    "\nMI Code Definitions:\n" + mi_code_definitions();
  std::string task =
      target_code
          ? "Task: Generate a response that naturally embodies the specified client MI code while "
            "maintaining consistency with your story and the conversation flow.\n"
          : "Task: Generate your next response, consistent with your story and the conversation "
            "flow.\n";
  task +=
      "Constraints: Use natural, colloquial language; avoid metaphors and dramatic wording. "
      "Generate only ONE utterance per turn. Don't start with \"It seems that\" or similar "
      "phrases.\n";
  const Utterance* last = state.last();
  std::string input = "Conversation history:\n" + render_window(state, k) +
                      "\nTherapist utterance: " + (last ? last->text : std::string{});
  if (target_code) input += "\nTarget client MI code: " + client_code_token(*target_code);
  r.messages.push_back(
      {"user", task + input + "\nOutput: Return only the client response content."});
  return r;
}

backend::ChatRequest selector_request(const DialogueState& state, int k, std::string_view phase) {
  backend::ChatRequest r;
  r.system_prompt = "You are an expert MI strategy selector.";
  std::string recent;
  const auto window = recent_exchanges(state, k);
  for (const auto& ex : window) {
    if (!recent.empty()) recent += ", ";
    const auto& code = ex.client->classified_code ? *ex.client->classified_code : ex.client->code;
    recent += std::string(code.token());
    if (ex.therapist) recent += " -> " + std::string(ex.therapist->code.token());
  }
  r.messages.push_back(
      {"user",
       "Task: (1) Classify the MI code of the client's last utterance "
       "(change/sustain/neutral). (2) Select the optimal MI technique the therapist should use "
       "next.\nPhase-aware selection: Early = more open questions and reflections; Middle = "
       "more complex reflections; Later = information giving and advice.\nCurrent phase: " +
           std::string(phase) + "\nMI Code Definitions:\n" + mi_code_definitions() +
           "\nRecent MI codes: " + recent + "\nConversation History:\n" +
           render_window(state, k) +
           "\nOutput: {\"client_mi_code\": \"<change|sustain|neutral>\", \"therapist_mi_code\": "
           "\"<reflection|question|therapist_input>\"}"});
  return r;
}

backend::ChatRequest therapist_request(const DialogueState& state, int k,
                                       std::optional<Category> selected, bool wrap_up) {
  backend::ChatRequest r;
  r.system_prompt = "You are an experienced psychotherapist skilled in MI techniques.";
  if (wrap_up) r.system_prompt += std::string(" ") + kWrapUpInstruction;
  std::string body =
      selected ? "Task: Generate a response that strictly follows the selected MI code.\n"
               : "Task: Generate the therapist's next response.\n";
  body +=
      "Constraints: Generate 1-2 utterances using casual, natural language. Do not use "
      "repetitive sentence patterns. Avoid \"It seems that\", \"It sounds like\" phrases.\n"
      "MI Codes:\n" +
      mi_code_definitions() + "\n";
  if (selected) body += "Selected Code: " + therapist_code_token(*selected) + "\n";
  body += "History:\n" + render_window(state, k) +
          "\nOutput: Return only the therapist response content.";
  r.messages.push_back({"user", body});
  return r;
}

backend::ChatRequest monitor_request(const DialogueState& state) {
  backend::ChatRequest r;
  r.system_prompt = "You are a session monitor.";
  r.messages.push_back(
      {"user",
       "Task: Output valid JSON {\"result\": \"<complete|continue>\", \"reason\": \"...\"} to "
       "determine if the session should end.\nRules: Return complete if the therapist uses "
       "closing cues (e.g., \"wrap up\", \"goodbye\") without introducing new topics, or if the "
       "client explicitly ends. Return continue if new topics emerge, substantive questions need "
       "answers, or ending signals are ambiguous.\nTranscript:\n" +
           render_transcript(state.history())});
  return r;
}

json selector_schema() {
  return json{{"type", "object"},
              {"required", {"client_mi_code", "therapist_mi_code"}},
              {"properties",
               {{"client_mi_code", {{"type", "string"}, {"enum", {"change", "sustain", "neutral"}}}},
                {"therapist_mi_code",
                 {{"type", "string"},
                  {"enum", {"reflection", "question", "therapist_input"}}}}}}};
}

json monitor_schema() {
  return json{{"type", "object"},
              {"required", {"result"}},
              {"properties", {{"result", {{"type", "string"}, {"enum", {"complete", "continue"}}}},
                              {"reason", {{"type", "string"}}}}}};
}

}  // namespace miforge::orchestrator
