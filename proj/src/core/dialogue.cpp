#include "miforge/core/dialogue.h"

#include <algorithm>
#include <cctype>

#include "miforge/core/errors.h"

namespace miforge {

namespace {

bool blank(const std::string& text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

void validate(const Utterance& utterance) {
  if (blank(utterance.text)) throw ValidationError("utterance text is empty");
  if (utterance.code.side() != utterance.speaker) {
    throw ValidationError("utterance code '" + utterance.code.to_string() +
                          "' does not match speaker " +
                          std::string(to_string(utterance.speaker)));
  }
  if (utterance.turn_index < 0) throw ValidationError("negative turn_index");
  if (utterance.classified_code && utterance.classified_code->side() != Side::client) {
    throw ValidationError("classified code must be a client code");
  }
}

void DialogueState::append(Utterance u) {
  if (u.turn_index != next_index()) {
    throw SequencingError("expected turn_index " + std::to_string(next_index()) + ", got " +
                          std::to_string(u.turn_index));
  }
  validate(u);
  const bool completes_exchange = u.speaker == Speaker::therapist && !history_.empty() &&
                                  history_.back().speaker == Speaker::client;
  trajectory_.push_back(u.code);
  history_.push_back(std::move(u));
  if (completes_exchange) ++turn_;
}

void DialogueState::classify_last_client(const MICode& code) {
  if (history_.empty() || history_.back().speaker != Speaker::client) {
    throw SequencingError("no client utterance to classify");
  }
  if (code.side() != Side::client) throw ValidationError("classification must be a client code");
  history_.back().classified_code = code;
}

DialogueState append_exchange(DialogueState state, Utterance u) {
  state.append(std::move(u));
  return state;
}

std::vector<Exchange> recent_exchanges(const DialogueState& state, int k) {
  std::vector<Exchange> all;
  for (const auto& u : state.history()) {
    if (u.speaker == Speaker::client) {
      all.push_back(Exchange{&u, nullptr});
    } else if (!all.empty() && all.back().therapist == nullptr) {
      all.back().therapist = &u;
    }
  }
  if (k >= 0 && all.size() > static_cast<std::size_t>(k)) {
    all.erase(all.begin(), all.end() - k);
  }
  return all;
}

}  // namespace miforge
