#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "miforge/backend/backend.h"
#include "miforge/core/session.h"

namespace miforge::judge {

inline constexpr std::size_t kDimensionCount = 6;
inline constexpr std::array<std::string_view, kDimensionCount> kDimensions{
    "coherence", "depth", "progress", "naturalness", "empathy", "adherence"};
inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 5;

struct RubricScore {
  std::string session_id;
  std::string judge_model;
  std::array<int, kDimensionCount> scores{};

  friend bool operator==(const RubricScore&, const RubricScore&) = default;
};

void validate(const RubricScore& score);

/// Flat record: {session_id, judge_model, coherence, ..., adherence}.
void to_json(nlohmann::json& j, const RubricScore& s);
void from_json(const nlohmann::json& j, RubricScore& s);

/// The bundled six-dimension rubric (data/rubric.txt).
const std::string& default_rubric();
std::string load_rubric(const std::filesystem::path& path);

struct JudgeOptions {
  std::string rubric = default_rubric();
  /// Show each utterance's MI code in the transcript.
  bool include_codes = false;
  double temperature = 0.0;
  int max_retries = 3;
};

nlohmann::json judge_schema();
backend::ChatRequest judge_request(const SessionRecord& session, const JudgeOptions& options);

/// One structured call scoring all six dimensions.
RubricScore judge_session(const SessionRecord& session, backend::Backend& backend,
                          const JudgeOptions& options = {});

struct DimensionMeans {
  std::array<double, kDimensionCount> means{};
  double overall = 0.0;  // mean of the six dimension means
  std::size_t count = 0;
};

DimensionMeans from_dimension_means(const std::array<double, kDimensionCount>& means);

/// UndefinedMetricError on empty input.
DimensionMeans mean_scores(std::span<const RubricScore> scores);

using GroupKey = std::function<std::string(const RubricScore&)>;
std::map<std::string, DimensionMeans> aggregate_scores(std::span<const RubricScore> scores,
                                                       const GroupKey& group_key);

}  // namespace miforge::judge
