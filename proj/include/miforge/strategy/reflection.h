#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "miforge/backend/backend.h"
#include "miforge/core/session.h"
#include "miforge/strategy/content.h"

namespace miforge::strategy {

struct ReflectionPair {
  std::string reflection_text;  // r
  std::string client_text;      // u, the client utterance just before r
};

void validate(const ReflectionPair& pair);

/// Every therapist reflection paired with the client utterance right before
/// it. Reflections without one (the greeting slot) are skipped.
std::vector<ReflectionPair> reflection_pairs(const SessionRecord& record);

inline constexpr double kNoveltyThreshold = 0.8;
inline constexpr double kSimilarityWeight = 0.4;
inline constexpr double kInformationWeight = 0.6;

struct ReflectionScores {
  double similarity = 0.0;   // Sim in [0, 1]
  double information = 0.0;  // Info in [0, 1]
};

/// (cos(e_r, e_u) + 1) / 2 over sentence embeddings.
double semantic_similarity(const ReflectionPair& pair, backend::Backend& embedder);

/// Share of the reflection's content tokens whose best token-embedding
/// cosine against the client's content tokens stays below 0.8. With no
/// client content tokens every reflection token is novel.
double information_gain(const ReflectionPair& pair, backend::Backend& embedder,
                        const ContentAnalyzer& analyzer = {});

/// Both scores, with the sentence and token embeddings fetched in two
/// batched calls.
ReflectionScores score_reflection(const ReflectionPair& pair, backend::Backend& embedder,
                                  const ContentAnalyzer& analyzer = {});

double depth_score(const ReflectionScores& s);

/// Mean depth over pairs; UndefinedMetricError when there are none.
double reflection_depth(std::span<const ReflectionScores> scores);
double reflection_depth(std::span<const ReflectionPair> pairs, backend::Backend& embedder,
                        const ContentAnalyzer& analyzer = {});

enum class ReflectionClass { repeat, rephrase, paraphrase, summarize };
std::string_view to_string(ReflectionClass c);
bool is_complex(ReflectionClass c);

/// First match of repeat, rephrase, paraphrase; summarize otherwise.
ReflectionClass classify_reflection(const ReflectionScores& s);
ReflectionClass classify_reflection(const ReflectionPair& pair, backend::Backend& embedder,
                                    const ContentAnalyzer& analyzer = {});

double complex_reflection_ratio(std::span<const ReflectionClass> classes);
double complex_reflection_ratio(std::span<const ReflectionPair> pairs, backend::Backend& embedder,
                                const ContentAnalyzer& analyzer = {});

}  // namespace miforge::strategy
