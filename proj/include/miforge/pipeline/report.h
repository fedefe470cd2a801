#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "miforge/judge/judge.h"
#include "miforge/pipeline/metrics.h"

namespace miforge::pipeline {

/// Per-metric means over the sessions where the metric is defined.
struct MetricSummary {
  std::array<std::optional<double>, kMetricCount> means{};
  std::size_t sessions = 0;

  std::optional<double> operator[](Metric m) const { return means[static_cast<std::size_t>(m)]; }
};

MetricSummary summarize(std::span<const SessionMetrics> records);

/// "full", "no-story", "no-mi" or "no-both".
std::string variant_name(const Ablation& a);
/// Column heading: Full, w/o Story, w/o MI, w/o Both.
std::string variant_label(const Ablation& a);

/// Percent metrics as value*100 and ratios as-is, both to one decimal.
/// Threshold metrics get a leading check or cross mark.
std::string format_cell(Metric m, double value);

/// Metric rows by model columns over full-configuration sessions, plus an
/// Overall column holding the mean of the model means. Best per row in
/// bold, runner-up in italics when there are at least three models.
std::string render_model_table(std::span<const SessionMetrics> records);

/// Full / w/o Story / w/o MI / w/o Both for one model, the largest
/// degradation against Full in bold.
std::string render_ablation_table(std::span<const SessionMetrics> records,
                                  const std::string& model_name);

/// Judge model rows by rubric dimension, with the overall mean.
std::string render_judge_table(std::span<const judge::RubricScore> scores);

/// The full Markdown report. Ablation tables appear for models with more
/// than one variant; the judge table when scores are given.
std::string render_report(std::span<const SessionMetrics> records,
                          std::span<const judge::RubricScore> scores);

}  // namespace miforge::pipeline
