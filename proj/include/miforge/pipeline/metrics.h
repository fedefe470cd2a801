#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "miforge/backend/backend.h"
#include "miforge/core/session.h"
#include "miforge/lexmetrics/scorer.h"
#include "miforge/strategy/report.h"

namespace miforge::pipeline {

enum class Metric {
  entropy,
  distinct2,
  perplexity,
  self_bleu,
  code_entropy,
  strategy_adherence,
  reflection_depth,
  complex_reflection_ratio,
  open_question_ratio,
  reflection_question_ratio,
};
inline constexpr std::size_t kMetricCount = 10;

struct MetricInfo {
  Metric metric;
  std::string_view key;    // JSON field
  std::string_view label;  // report row
  bool percent;            // shown as value * 100
  bool higher_is_better;
  std::optional<double> threshold;  // strict lower bound, in stored units
};

/// Report row order: lexical block, then strategy block.
const std::array<MetricInfo, kMetricCount>& metric_table();
const MetricInfo& info(Metric m);

/// One metrics.jsonl record: the ten metrics (null when undefined), the
/// three threshold flags and the code counts behind the strategy block.
struct SessionMetrics {
  std::string session_id;
  std::string model_name;
  Ablation ablation;
  std::array<std::optional<double>, kMetricCount> values{};
  bool pass_complex_reflection = false;
  bool pass_open_question = false;
  bool pass_reflection_question = false;
  std::array<long, 4> code_counts{};
  std::vector<std::string> undefined;

  std::optional<double> operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }
  std::optional<double>& operator[](Metric m) { return values[static_cast<std::size_t>(m)]; }

  friend bool operator==(const SessionMetrics&, const SessionMetrics&) = default;
};

void to_json(nlohmann::json& j, const SessionMetrics& m);
void from_json(const nlohmann::json& j, SessionMetrics& m);
/// Rejects out-of-range values (fractions outside [0,1], negative ratios,
/// perplexity below 1).
void validate(const SessionMetrics& m);

struct EvalContext {
  const lexmetrics::Scorer& scorer;
  /// Embedding backend for the reflection metrics; may be null.
  backend::Backend* embedder = nullptr;
  strategy::StrategyOptions options;
};

SessionMetrics evaluate_session(const SessionRecord& record, const EvalContext& ctx);

/// Sessions are scored in parallel (at most `threads` at once, 0 = OpenMP
/// default); result i belongs to records[i].
std::vector<SessionMetrics> evaluate_corpus(const std::vector<SessionRecord>& records,
                                            const EvalContext& ctx, int threads = 0);
/// Single-threaded reference for evaluate_corpus.
std::vector<SessionMetrics> evaluate_corpus_serial(const std::vector<SessionRecord>& records,
                                                   const EvalContext& ctx);

}  // namespace miforge::pipeline
