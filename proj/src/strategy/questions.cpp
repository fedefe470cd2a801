#include "miforge/strategy/questions.h"

#include <algorithm>
#include <array>

#include <spdlog/spdlog.h>

#include "miforge/core/errors.h"
#include "miforge/core/text.h"

namespace miforge::strategy {

namespace {

constexpr std::array<std::string_view, 11> kOpenWords{
    "what", "what's", "how", "how's", "why", "where", "which", "who", "describe", "explain",
    "elaborate"};

// Multi-word cues, matched against the space-joined token stream.
constexpr std::array<std::string_view, 7> kOpenPhrases{
    "tell me", "walk me through", "say more", "share more", "in what way", "help me understand",
    "talk about"};

}  // namespace

std::string_view to_string(QuestionType t) { return t == QuestionType::open ? "open" : "closed"; }

QuestionType classify_question(std::string_view text) {
  const auto tokens = text::tokenize(text);
  std::string joined = " ";
  for (const auto& t : tokens) {
    if (std::find(kOpenWords.begin(), kOpenWords.end(), t) != kOpenWords.end()) {
      return QuestionType::open;
    }
    joined += t + ' ';
  }
  for (auto phrase : kOpenPhrases) {
    if (joined.find(" " + std::string(phrase) + " ") != std::string::npos) return QuestionType::open;
  }
  if (text.find('?') == std::string_view::npos) {
    spdlog::warn("classify_question: not a question, counted as closed: \"{}\"", text);
  }
  return QuestionType::closed;
}

std::vector<std::string> session_questions(const SessionRecord& record) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < record.utterances.size(); ++i) {
    const auto& u = record.utterances[i];
    if (u.speaker == Speaker::therapist && u.code.category() == Category::question) {
      out.push_back(u.text);
    }
  }
  return out;
}

double open_question_ratio(std::span<const QuestionType> types) {
  if (types.empty()) throw UndefinedMetricError("open question ratio undefined without questions");
  const auto open = std::count(types.begin(), types.end(), QuestionType::open);
  return static_cast<double>(open) / static_cast<double>(types.size());
}

double open_question_ratio(std::span<const std::string> questions,
                           const QuestionClassifier& classifier) {
  std::vector<QuestionType> types;
  types.reserve(questions.size());
  for (const auto& q : questions) types.push_back(classifier(q));
  return open_question_ratio(types);
}

}  // namespace miforge::strategy
