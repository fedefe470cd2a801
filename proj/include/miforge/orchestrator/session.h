#pragma once

#include <optional>
#include <string>

#include "miforge/backend/backend.h"
#include "miforge/core/dialogue.h"
#include "miforge/core/errors.h"
#include "miforge/core/profile.h"
#include "miforge/core/session.h"

namespace miforge::orchestrator {

struct SessionConfig {
  int t_min = 10;
  int t_max = 40;
  int context_window_k = 5;
  bool use_story = true;
  bool use_mi_code = true;
  backend::GenerationParams params;

  SessionParams session_params() const;
};

/// Throws ValidationError unless 1 <= t_min <= t_max and k >= 1.
void validate(const SessionConfig& config);

/// Interaction agent output for one exchange.
struct StrategySelection {
  Category client_code = Category::neutral;
  Category therapist_code = Category::reflection;
};

enum class Phase { early, middle, later };
std::string_view to_string(Phase phase);

/// early: t < t_min / 2; later: t >= t_max - 5; middle otherwise. Early
/// wins when both hold.
Phase phase_for(int turn, const SessionConfig& config);

/// Per-call context shared by the agent operations below.
struct TurnContext {
  const SessionConfig& config;
  backend::Backend& backend;
  std::string session_id;
};

/// Opening therapist utterance at index 0, coded therapist/input/affirmation.
Utterance greet(const TurnContext& ctx);

/// Classifies the latest client utterance and picks the therapist's next
/// code from the last k exchanges.
StrategySelection select_strategy(const DialogueState& state, int k, const TurnContext& ctx);

/// Client utterance coded with `target_code`. `story` is used only when the
/// config enables it; otherwise the profile explanations ground the persona.
Utterance client_turn(const DialogueState& state, const ClientProfile& profile,
                      const SituationalStory* story, Category target_code,
                      const TurnContext& ctx);

/// Therapist utterance. With `selected` set the prompt constrains the code;
/// without it the reply is coded post hoc by the rule-based coder.
Utterance therapist_turn(const DialogueState& state, std::optional<Category> selected,
                         const TurnContext& ctx);

/// Asks the session monitor whether the dialogue has closed. A reply that
/// never validates counts as "continue" and leaves a warning event.
bool check_termination(const DialogueState& state, const TurnContext& ctx);

struct SessionInputs {
  std::string session_id;
  const ClientProfile* profile = nullptr;
  const SituationalStory* story = nullptr;
  std::string story_ref;
  /// Empty: the profile's identity.
  std::string profile_ref;
};

/// Raised when a session cannot continue; carries what was generated so far.
class SessionAborted : public Error {
 public:
  SessionAborted(const std::string& what, SessionRecord partial)
      : Error(what), partial_(std::move(partial)) {}
  const SessionRecord& partial() const { return partial_; }

 private:
  SessionRecord partial_;
};

/// Greets, then loops client turn / strategy selection / therapist turn
/// until the monitor reports completion or the turn counter hits t_max. The
/// monitor runs only once more than t_min exchanges are complete.
SessionRecord run_session(const SessionConfig& config, const SessionInputs& inputs,
                          backend::Backend& backend);

/// Rule-based therapist code for utterances generated without a selected
/// code: '?' -> question, reflective opener -> reflection, else input.
MICode heuristic_therapist_code(std::string_view text);

}  // namespace miforge::orchestrator
