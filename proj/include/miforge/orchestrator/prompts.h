#pragma once

#include <optional>
#include <string>

#include "miforge/backend/types.h"
#include "miforge/core/dialogue.h"
#include "miforge/core/profile.h"

namespace miforge::orchestrator {

/// Appended to the therapist system prompt on the last allowed exchange.
inline constexpr const char* kWrapUpInstruction =
    "This is the final exchange of the session: briefly summarize what the client shared, "
    "acknowledge their effort, and close the conversation warmly.";

/// Taxonomy text shared by every agent prompt.
const std::string& mi_code_definitions();

/// "Therapist: ...\nClient: ..." lines for the last k exchanges. The opening
/// greeting is included while it still falls inside the window.
std::string render_window(const DialogueState& state, int k);

/// Whole transcript, for the monitor and the judge.
std::string render_transcript(const std::vector<Utterance>& history, bool with_codes = false);

backend::ChatRequest greeting_request();

backend::ChatRequest client_request(const DialogueState& state, int k,
                                    const ClientProfile& profile, const SituationalStory* story,
                                    std::optional<Category> target_code);

backend::ChatRequest selector_request(const DialogueState& state, int k, std::string_view phase);

backend::ChatRequest therapist_request(const DialogueState& state, int k,
                                       std::optional<Category> selected, bool wrap_up);

backend::ChatRequest monitor_request(const DialogueState& state);

nlohmann::json selector_schema();
nlohmann::json monitor_schema();

}  // namespace miforge::orchestrator
