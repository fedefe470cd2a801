#pragma once

#include <optional>
#include <string>
#include <vector>

#include "miforge/backend/backend.h"
#include "miforge/core/session.h"
#include "miforge/strategy/content.h"
#include "miforge/strategy/distribution.h"
#include "miforge/strategy/questions.h"
#include "miforge/strategy/reflection.h"

namespace miforge::strategy {

inline constexpr double kComplexReflectionThreshold = 0.5;
inline constexpr double kOpenQuestionThreshold = 0.7;
inline constexpr double kReflectionQuestionThreshold = 2.0;

/// Strict comparisons against the thresholds above.
bool passes_complex_reflection(double ratio);
bool passes_open_question(double ratio);
bool passes_reflection_question(double ratio);

struct StrategyOptions {
  ContentAnalyzer analyzer;
  QuestionClassifier classifier = classify_question;
};

/// The six strategy metrics of one session. A metric with no defined value
/// (no reflections, no questions, no embedder) is empty and explained in
/// `undefined`.
struct StrategyReport {
  CodeCounts counts;
  std::optional<double> code_entropy;
  std::optional<double> strategy_adherence;
  std::optional<double> reflection_depth;
  std::optional<double> complex_reflection_ratio;
  std::optional<double> open_question_ratio;
  std::optional<double> reflection_question_ratio;
  std::vector<std::string> undefined;
};

/// `embedder` may be null; reflection metrics are then undefined.
StrategyReport evaluate_strategy(const SessionRecord& record, backend::Backend* embedder,
                                 const StrategyOptions& options = {});

}  // namespace miforge::strategy
