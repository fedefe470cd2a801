#include "miforge/strategy/report.h"

#include "miforge/core/errors.h"

namespace miforge::strategy {

bool passes_complex_reflection(double ratio) { return ratio > kComplexReflectionThreshold; }
bool passes_open_question(double ratio) { return ratio > kOpenQuestionThreshold; }
bool passes_reflection_question(double ratio) { return ratio > kReflectionQuestionThreshold; }

namespace {

template <typename F>
void attempt(std::optional<double>& slot, const char* name, std::vector<std::string>& notes, F f) {
  try {
    slot = f();
  } catch (const UndefinedMetricError& e) {
    notes.push_back(std::string(name) + ": " + e.what());
  }
}

}  // namespace

StrategyReport evaluate_strategy(const SessionRecord& record, backend::Backend* embedder,
                                 const StrategyOptions& options) {
  StrategyReport r;
  r.counts = CodeCounts::from_session(record);
  auto& notes = r.undefined;
  attempt(r.code_entropy, "code_entropy", notes, [&] { return code_entropy(r.counts); });
  attempt(r.strategy_adherence, "strategy_adherence", notes,
          [&] { return strategy_adherence(r.counts); });
  attempt(r.reflection_question_ratio, "reflection_question_ratio", notes,
          [&] { return reflection_question_ratio(r.counts); });

  attempt(r.open_question_ratio, "open_question_ratio", notes, [&] {
    std::vector<QuestionType> types;
    for (std::size_t i = 1; i < record.utterances.size(); ++i) {
      const auto& u = record.utterances[i];
      if (u.speaker != Speaker::therapist || u.code.category() != Category::question) continue;
      // Hand-coded subtypes win over the text classifier.
      if (u.code.subtype() == Subtype::open) {
        types.push_back(QuestionType::open);
      } else if (u.code.subtype() == Subtype::closed) {
        types.push_back(QuestionType::closed);
      } else {
        types.push_back(options.classifier(u.text));
      }
    }
    return open_question_ratio(types);
  });

  const auto pairs = reflection_pairs(record);
  if (!embedder || !embedder->has_embedder()) {
    notes.emplace_back("reflection_depth: no embedding provider");
    notes.emplace_back("complex_reflection_ratio: no embedding provider");
  } else if (pairs.empty()) {
    notes.emplace_back("reflection_depth: no reflections");
    notes.emplace_back("complex_reflection_ratio: no reflections");
  } else {
    std::vector<ReflectionScores> scores;
    std::vector<ReflectionClass> classes;
    int skipped = 0;
    for (const auto& p : pairs) {
      try {
        scores.push_back(score_reflection(p, *embedder, options.analyzer));
        classes.push_back(classify_reflection(scores.back()));
      } catch (const UndefinedMetricError&) {
        ++skipped;
      }
    }
    if (skipped > 0) {
      notes.push_back("reflections without content tokens skipped: " + std::to_string(skipped));
    }
    attempt(r.reflection_depth, "reflection_depth", notes,
            [&] { return reflection_depth(scores); });
    attempt(r.complex_reflection_ratio, "complex_reflection_ratio", notes,
            [&] { return complex_reflection_ratio(classes); });
  }
  return r;
}

}  // namespace miforge::strategy
