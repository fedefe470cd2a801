#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "miforge/judge/judge.h"

namespace miforge::stats {

struct HumanRating {
  std::string session_id;
  std::string annotator;
  std::array<int, judge::kDimensionCount> scores{};
};

/// CSV with a header naming session_id, annotator and the six rubric
/// dimensions (any column order, extra columns ignored). Annotation tools
/// save one file per annotator as SourceFileName_AnnotatorName.csv; when the
/// annotator column is missing the name after the last '_' is used.
std::vector<HumanRating> read_ratings_csv(const std::filesystem::path& path);

/// Splits one CSV line; double quotes group fields and "" escapes a quote.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace miforge::stats
