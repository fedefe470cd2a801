#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace miforge {

enum class Side { therapist, client };

enum class Category {
  // therapist
  reflection,
  question,
  input,
  other,
  // client
  change,
  sustain,
  neutral,
};

enum class Subtype {
  none,
  simple,
  complex,
  open,
  closed,
  information,
  advice,
  affirmation,
  goal_setting,
};

std::string_view to_string(Side side);
std::string_view to_string(Subtype subtype);
Side side_of(Category category);

/// A behavioral label from the MI code taxonomy.
///
/// Construction validates the (side, category, subtype) triple, so every
/// live MICode is legal: client codes carry no subtype and a subtype always
/// belongs to its category.
class MICode {
 public:
  static MICode therapist(Category category, Subtype subtype = Subtype::none);
  static MICode client(Category category);

  /// Parses "reflection", "therapist_input", "input", "question:open", ...
  static MICode parse(std::string_view text);
  static std::optional<MICode> try_parse(std::string_view text);

  Side side() const { return side_; }
  Category category() const { return category_; }
  Subtype subtype() const { return subtype_; }

  /// Prompt token: "reflection", "question", "therapist_input", "other",
  /// "change", "sustain", "neutral".
  std::string_view token() const;

  /// Lossless form, token plus ":subtype" when one is set.
  std::string to_string() const;

  friend bool operator==(const MICode&, const MICode&) = default;

 private:
  MICode(Side side, Category category, Subtype subtype)
      : side_(side), category_(category), subtype_(subtype) {}

  Side side_;
  Category category_;
  Subtype subtype_;
};

/// Coarse category token used by the metrics: {reflection, question, input,
/// other} for therapists, {change, sustain, neutral} for clients.
std::string_view project_category(const MICode& code);

/// Same projection over a serialized code; idempotent on its own output.
std::string_view project_category(std::string_view token);

bool is_legal(Category category, Subtype subtype);

}  // namespace miforge
