#include "miforge/orchestrator/session.h"

#include <array>

#include "miforge/backend/errors.h"
#include "miforge/core/errors.h"
#include "miforge/core/text.h"
#include "miforge/orchestrator/prompts.h"

namespace miforge::orchestrator {

using nlohmann::json;

SessionParams SessionConfig::session_params() const {
  return SessionParams{params.temperature, params.top_p, t_min, t_max, context_window_k};
}

void validate(const SessionConfig& config) {
  if (config.t_min < 1 || config.t_min > config.t_max) {
    throw ValidationError("session config needs 1 <= t_min <= t_max (got t_min=" +
                          std::to_string(config.t_min) + ", t_max=" +
                          std::to_string(config.t_max) + ")");
  }
  if (config.context_window_k < 1) throw ValidationError("context_window_k must be >= 1");
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::early: return "early";
    case Phase::middle: return "middle";
    case Phase::later: return "later";
  }
  return "middle";
}

Phase phase_for(int turn, const SessionConfig& config) {
  if (2 * turn < config.t_min) return Phase::early;
  if (turn >= config.t_max - 5) return Phase::later;
  return Phase::middle;
}

namespace {

backend::ChatRequest stamp(backend::ChatRequest r, backend::CallRole role, int turn,
                           const TurnContext& ctx) {
  r.role = role;
  r.turn = turn;
  r.session_id = ctx.session_id;
  r.params = ctx.config.params;
  return r;
}

std::string clean(const std::string& reply) { return std::string(text::trim(reply)); }

}  // namespace

MICode heuristic_therapist_code(std::string_view utterance) {
  if (utterance.find('?') != std::string_view::npos) return MICode::therapist(Category::question);
  const std::string lower = text::to_lower(text::trim(utterance));
  static constexpr std::array<std::string_view, 14> kReflective{
      "so you",    "so part of you", "you're",   "you are",    "you feel",
      "you've",    "you want",       "you care", "your ",      "it sounds",
      "sounds like", "it's been",    "there is", "being "};
  for (auto stem : kReflective) {
    if (lower.rfind(stem, 0) == 0) return MICode::therapist(Category::reflection);
  }
  return MICode::therapist(Category::input);
}

Utterance greet(const TurnContext& ctx) {
  auto reply = ctx.backend.chat(stamp(greeting_request(), backend::CallRole::greeting, 0, ctx));
  Utterance u;
  u.speaker = Speaker::therapist;
  u.text = clean(reply);
  u.code = MICode::therapist(Category::input, Subtype::affirmation);
  u.turn_index = 0;
  validate(u);
  return u;
}

StrategySelection select_strategy(const DialogueState& state, int k, const TurnContext& ctx) {
  const Utterance* last = state.last();
  if (!last || last->speaker != Speaker::client) {
    throw SequencingError("strategy selection needs a client utterance last");
  }
  auto request = selector_request(state, k, to_string(phase_for(state.turn(), ctx.config)));
  request.json_schema = selector_schema();
  const json reply =
      ctx.backend.chat_structured(stamp(std::move(request), backend::CallRole::selector,
                                        state.turn() + 1, ctx));
  StrategySelection s;
  s.client_code = MICode::parse(reply.at("client_mi_code").get<std::string>()).category();
  s.therapist_code = MICode::parse(reply.at("therapist_mi_code").get<std::string>()).category();
  return s;
}

Utterance client_turn(const DialogueState& state, const ClientProfile& profile,
                      const SituationalStory* story, Category target_code,
                      const TurnContext& ctx) {
  const Utterance* last = state.last();
  if (!last || last->speaker != Speaker::therapist) {
    throw SequencingError("client turn needs a therapist utterance last");
  }
  const SituationalStory* grounding = ctx.config.use_story ? story : nullptr;
  if (ctx.config.use_story && !story) throw ValidationError("story required when use_story is set");
  const std::optional<Category> target =
      ctx.config.use_mi_code ? std::optional<Category>(target_code) : std::nullopt;
  auto reply = ctx.backend.chat(
      stamp(client_request(state, ctx.config.context_window_k, profile, grounding, target),
            backend::CallRole::client, state.turn() + 1, ctx));
  Utterance u;
  u.speaker = Speaker::client;
  u.text = clean(reply);
  u.code = MICode::client(target ? *target : Category::neutral);
  u.turn_index = state.next_index();
  validate(u);
  return u;
}

Utterance therapist_turn(const DialogueState& state, std::optional<Category> selected,
                         const TurnContext& ctx) {
  const Utterance* last = state.last();
  if (!last || last->speaker != Speaker::client) {
    throw SequencingError("therapist turn needs a client utterance last");
  }
  const bool wrap_up = state.turn() == ctx.config.t_max - 1;
  auto reply = ctx.backend.chat(
      stamp(therapist_request(state, ctx.config.context_window_k, selected, wrap_up),
            backend::CallRole::therapist, state.turn() + 1, ctx));
  Utterance u;
  u.speaker = Speaker::therapist;
  u.text = clean(reply);
  u.code = selected ? MICode::therapist(*selected) : heuristic_therapist_code(u.text);
  u.turn_index = state.next_index();
  validate(u);
  return u;
}

bool check_termination(const DialogueState& state, const TurnContext& ctx) {
  if (state.turn() < ctx.config.t_min) {
    throw SequencingError("termination check before t_min");
  }
  auto request = stamp(monitor_request(state), backend::CallRole::monitor, state.turn(), ctx);
  request.json_schema = monitor_schema();
  try {
    const json reply = ctx.backend.chat_structured(request);
    return reply.at("result").get<std::string>() == "complete";
  } catch (const backend::StructuredOutputError& e) {
    ctx.backend.record_warning(request, std::string("monitor reply unusable, continuing: ") +
                                            e.what());
    return false;
  }
}

SessionRecord run_session(const SessionConfig& config, const SessionInputs& inputs,
                          backend::Backend& backend) {
  validate(config);
  if (!inputs.profile) throw ValidationError("run_session needs a client profile");
  if (config.use_story && !inputs.story) {
    throw ValidationError("run_session needs a story when use_story is set");
  }

  SessionRecord record;
  record.session_id = inputs.session_id;
  record.profile_ref = inputs.profile_ref.empty() ? inputs.profile->identity : inputs.profile_ref;
  record.story_ref = config.use_story ? inputs.story_ref : std::string{};
  record.model_name = backend.model_name();
  record.ablation = Ablation{config.use_story, config.use_mi_code};
  record.generation_params = config.session_params();

  const TurnContext ctx{config, backend, inputs.session_id};
  DialogueState state;
  try {
    state.append(greet(ctx));
    Category client_target = Category::neutral;
    while (!state.complete() && state.turn() < config.t_max) {
      state.append(client_turn(state, *inputs.profile, inputs.story, client_target, ctx));
      std::optional<Category> selected;
      if (config.use_mi_code) {
        const auto selection = select_strategy(state, config.context_window_k, ctx);
        state.classify_last_client(MICode::client(selection.client_code));
        client_target = selection.client_code;
        selected = selection.therapist_code;
      }
      state.append(therapist_turn(state, selected, ctx));
      if (state.turn() > config.t_min && check_termination(state, ctx)) state.mark_complete();
    }
  } catch (const Error& e) {
    record.utterances = state.history();
    record.completed = state.complete();
    record.llm_call_count = backend.call_count_for(inputs.session_id);
    throw SessionAborted(std::string("session ") + inputs.session_id + " aborted: " + e.what(),
                         std::move(record));
  }
  record.utterances = state.history();
  record.completed = state.complete();
  record.llm_call_count = backend.call_count_for(inputs.session_id);
  validate(record);
  return record;
}

}  // namespace miforge::orchestrator
