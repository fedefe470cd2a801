#pragma once

#include <optional>
#include <string>
#include <vector>

#include "miforge/core/mi_code.h"

namespace miforge {

using Speaker = Side;

struct Utterance {
  Speaker speaker = Speaker::therapist;
  std::string text;
  /// Intended code: the label the generating agent was asked to embody.
  MICode code = MICode::therapist(Category::input, Subtype::affirmation);
  /// Position in the session history.
  int turn_index = 0;
  /// Client side only: the interaction agent's classification of this
  /// utterance. Authoritative for strategy selection.
  std::optional<MICode> classified_code;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

/// Throws ValidationError unless text is nonempty after trimming and the
/// code side matches the speaker.
void validate(const Utterance& utterance);

/// Shared session state of the dialogue loop.
///
/// The code trajectory is a projection of the history and the turn counter
/// counts completed client->therapist exchanges. Both are maintained here
/// and never set directly.
class DialogueState {
 public:
  const std::vector<Utterance>& history() const { return history_; }
  const std::vector<MICode>& code_trajectory() const { return trajectory_; }
  int turn() const { return turn_; }
  bool complete() const { return complete_; }

  /// Index the next appended utterance must carry.
  int next_index() const { return static_cast<int>(history_.size()); }

  /// Appends one utterance. Throws SequencingError when u.turn_index is not
  /// next_index(); ValidationError on an invalid utterance.
  void append(Utterance u);

  /// Records the interaction agent's classification of the latest client
  /// utterance.
  void classify_last_client(const MICode& code);

  /// false -> true, once.
  void mark_complete() { complete_ = true; }

  const Utterance* last() const { return history_.empty() ? nullptr : &history_.back(); }

 private:
  std::vector<Utterance> history_;
  std::vector<MICode> trajectory_;
  int turn_ = 0;
  bool complete_ = false;
};

/// Functional form of DialogueState::append.
DialogueState append_exchange(DialogueState state, Utterance u);

/// One client->therapist exchange of a session. The therapist reply is
/// absent for the exchange that is still in progress.
struct Exchange {
  const Utterance* client = nullptr;
  const Utterance* therapist = nullptr;
};

/// Splits history after the opening therapist utterance into exchanges and
/// returns the last k of them, oldest first.
std::vector<Exchange> recent_exchanges(const DialogueState& state, int k);

}  // namespace miforge
