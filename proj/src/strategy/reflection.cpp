#include "miforge/strategy/reflection.h"

#include <algorithm>
#include <limits>

#include "miforge/core/errors.h"
#include "miforge/core/text.h"

namespace miforge::strategy {

void validate(const ReflectionPair& pair) {
  if (text::trim(pair.reflection_text).empty() || text::trim(pair.client_text).empty()) {
    throw ValidationError("reflection pair needs non-empty reflection and client text");
  }
}

std::vector<ReflectionPair> reflection_pairs(const SessionRecord& record) {
  std::vector<ReflectionPair> out;
  const auto& h = record.utterances;
  for (std::size_t i = 1; i < h.size(); ++i) {
    const auto& u = h[i];
    if (u.speaker != Speaker::therapist || u.code.category() != Category::reflection) continue;
    if (h[i - 1].speaker != Speaker::client) continue;
    out.push_back({u.text, h[i - 1].text});
  }
  return out;
}

namespace {

double similarity_from(const backend::EmbeddingVector& r, const backend::EmbeddingVector& u) {
  return std::clamp((backend::cosine(r, u) + 1.0) / 2.0, 0.0, 1.0);
}

double information_from(const std::vector<std::string>& tr, const std::vector<std::string>& tu,
                        backend::Backend& embedder) {
  if (tr.empty()) throw UndefinedMetricError("reflection has no content tokens");
  if (tu.empty()) return 1.0;
  std::vector<std::string> batch(tr);
  batch.insert(batch.end(), tu.begin(), tu.end());
  const auto vectors = embedder.embed(batch);
  int novel = 0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < tu.size(); ++j) {
      best = std::max(best, backend::cosine(vectors[i], vectors[tr.size() + j]));
    }
    if (best < kNoveltyThreshold) ++novel;
  }
  return static_cast<double>(novel) / static_cast<double>(tr.size());
}

}  // namespace

double semantic_similarity(const ReflectionPair& pair, backend::Backend& embedder) {
  validate(pair);
  const std::vector<std::string> texts{pair.reflection_text, pair.client_text};
  const auto v = embedder.embed(texts);
  return similarity_from(v[0], v[1]);
}

double information_gain(const ReflectionPair& pair, backend::Backend& embedder,
                        const ContentAnalyzer& analyzer) {
  validate(pair);
  return information_from(analyzer.content_tokens(pair.reflection_text),
                          analyzer.content_tokens(pair.client_text), embedder);
}

ReflectionScores score_reflection(const ReflectionPair& pair, backend::Backend& embedder,
                                  const ContentAnalyzer& analyzer) {
  // Info first: a pair without content tokens is undefined before any
  // sentence embedding is spent on it.
  const double info = information_gain(pair, embedder, analyzer);
  return ReflectionScores{semantic_similarity(pair, embedder), info};
}

double depth_score(const ReflectionScores& s) {
  return kSimilarityWeight * s.similarity + kInformationWeight * s.information;
}

double reflection_depth(std::span<const ReflectionScores> scores) {
  if (scores.empty()) throw UndefinedMetricError("reflection depth undefined without reflections");
  double sum = 0.0;
  for (const auto& s : scores) sum += depth_score(s);
  return sum / static_cast<double>(scores.size());
}

double reflection_depth(std::span<const ReflectionPair> pairs, backend::Backend& embedder,
                        const ContentAnalyzer& analyzer) {
  std::vector<ReflectionScores> scores;
  for (const auto& p : pairs) scores.push_back(score_reflection(p, embedder, analyzer));
  return reflection_depth(scores);
}

std::string_view to_string(ReflectionClass c) {
  switch (c) {
    case ReflectionClass::repeat: return "repeat";
    case ReflectionClass::rephrase: return "rephrase";
    case ReflectionClass::paraphrase: return "paraphrase";
    case ReflectionClass::summarize: return "summarize";
  }
  return "summarize";
}

bool is_complex(ReflectionClass c) {
  return c == ReflectionClass::paraphrase || c == ReflectionClass::summarize;
}

ReflectionClass classify_reflection(const ReflectionScores& s) {
  if (s.similarity > 0.9 && s.information < 0.15) return ReflectionClass::repeat;
  if (s.similarity > 0.75 && s.information < 0.35) return ReflectionClass::rephrase;
  if (s.similarity > 0.5 && s.information < 0.6) return ReflectionClass::paraphrase;
  return ReflectionClass::summarize;
}

ReflectionClass classify_reflection(const ReflectionPair& pair, backend::Backend& embedder,
                                    const ContentAnalyzer& analyzer) {
  return classify_reflection(score_reflection(pair, embedder, analyzer));
}

double complex_reflection_ratio(std::span<const ReflectionClass> classes) {
  if (classes.empty()) {
    throw UndefinedMetricError("complex reflection ratio undefined without reflections");
  }
  const auto complex = std::count_if(classes.begin(), classes.end(), is_complex);
  return static_cast<double>(complex) / static_cast<double>(classes.size());
}

double complex_reflection_ratio(std::span<const ReflectionPair> pairs, backend::Backend& embedder,
                                const ContentAnalyzer& analyzer) {
  std::vector<ReflectionClass> classes;
  for (const auto& p : pairs) classes.push_back(classify_reflection(p, embedder, analyzer));
  return complex_reflection_ratio(classes);
}

}  // namespace miforge::strategy
