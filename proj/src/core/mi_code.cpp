#include "miforge/core/mi_code.h"

#include <array>
#include <utility>

#include "miforge/core/errors.h"

namespace miforge {

namespace {

constexpr std::array<std::pair<std::string_view, Subtype>, 8> kSubtypeNames{{
    {"simple", Subtype::simple},
    {"complex", Subtype::complex},
    {"open", Subtype::open},
    {"closed", Subtype::closed},
    {"information", Subtype::information},
    {"advice", Subtype::advice},
    {"affirmation", Subtype::affirmation},
    {"goal_setting", Subtype::goal_setting},
}};

std::optional<Category> category_from_token(std::string_view token) {
  if (token == "reflection") return Category::reflection;
  if (token == "question") return Category::question;
  if (token == "therapist_input" || token == "input") return Category::input;
  if (token == "other") return Category::other;
  if (token == "change") return Category::change;
  if (token == "sustain") return Category::sustain;
  if (token == "neutral") return Category::neutral;
  return std::nullopt;
}

std::string_view category_token(Category category) {
  switch (category) {
    case Category::reflection: return "reflection";
    case Category::question: return "question";
    case Category::input: return "therapist_input";
    case Category::other: return "other";
    case Category::change: return "change";
    case Category::sustain: return "sustain";
    case Category::neutral: return "neutral";
  }
  return "other";
}

}  // namespace

std::string_view to_string(Side side) {
  return side == Side::therapist ? "therapist" : "client";
}

std::string_view to_string(Subtype subtype) {
  for (const auto& [name, value] : kSubtypeNames) {
    if (value == subtype) return name;
  }
  return "";
}

Side side_of(Category category) {
  switch (category) {
    case Category::change:
    case Category::sustain:
    case Category::neutral:
      return Side::client;
    default:
      return Side::therapist;
  }
}

bool is_legal(Category category, Subtype subtype) {
  switch (subtype) {
    case Subtype::none:
      return true;
    case Subtype::simple:
    case Subtype::complex:
      return category == Category::reflection;
    case Subtype::open:
    case Subtype::closed:
      return category == Category::question;
    case Subtype::information:
    case Subtype::advice:
    case Subtype::affirmation:
    case Subtype::goal_setting:
      return category == Category::input;
  }
  return false;
}

MICode MICode::therapist(Category category, Subtype subtype) {
  if (side_of(category) != Side::therapist) {
    throw ValidationError("therapist code with client category '" +
                          std::string(category_token(category)) + "'");
  }
  if (!is_legal(category, subtype)) {
    throw ValidationError("subtype '" + std::string(miforge::to_string(subtype)) +
                          "' is not legal for '" + std::string(category_token(category)) + "'");
  }
  return MICode(Side::therapist, category, subtype);
}

MICode MICode::client(Category category) {
  if (side_of(category) != Side::client) {
    throw ValidationError("client code with therapist category '" +
                          std::string(category_token(category)) + "'");
  }
  return MICode(Side::client, category, Subtype::none);
}

std::optional<MICode> MICode::try_parse(std::string_view text) {
  std::string_view head = text;
  std::string_view tail;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    tail = text.substr(colon + 1);
  }
  auto category = category_from_token(head);
  if (!category) return std::nullopt;
  Subtype subtype = Subtype::none;
  if (!tail.empty()) {
    bool found = false;
    for (const auto& [name, value] : kSubtypeNames) {
      if (name == tail) {
        subtype = value;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  if (!is_legal(*category, subtype)) return std::nullopt;
  if (side_of(*category) == Side::client) {
    if (subtype != Subtype::none) return std::nullopt;
    return MICode(Side::client, *category, Subtype::none);
  }
  return MICode(Side::therapist, *category, subtype);
}

MICode MICode::parse(std::string_view text) {
  if (auto code = try_parse(text)) return *code;
  throw ValidationError("unknown MI code '" + std::string(text) + "'");
}

std::string_view MICode::token() const { return category_token(category_); }

std::string MICode::to_string() const {
  std::string out(token());
  if (subtype_ != Subtype::none) {
    out += ':';
    out += miforge::to_string(subtype_);
  }
  return out;
}

std::string_view project_category(const MICode& code) {
  if (code.category() == Category::input) return "input";
  return code.token();
}

std::string_view project_category(std::string_view token) {
  return project_category(MICode::parse(token));
}

}  // namespace miforge
