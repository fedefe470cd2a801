#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "miforge/core/session.h"

namespace miforge::strategy {

enum class QuestionType { open, closed };
std::string_view to_string(QuestionType t);

using QuestionClassifier = std::function<QuestionType(std::string_view)>;

/// Rule-based default: any open cue (wh-word, "tell me", "describe", ...)
/// makes the question open; everything else is closed. Text that is not a
/// question at all is classed closed with a logged warning.
QuestionType classify_question(std::string_view text);

/// Therapist question texts of a session, greeting excluded.
std::vector<std::string> session_questions(const SessionRecord& record);

/// Open over all questions; UndefinedMetricError without questions.
double open_question_ratio(std::span<const QuestionType> types);
double open_question_ratio(std::span<const std::string> questions,
                           const QuestionClassifier& classifier = classify_question);

}  // namespace miforge::strategy
