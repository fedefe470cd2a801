#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace miforge::profiler {

struct QuestionnaireItem {
  std::string id;
  std::string text;
  std::string domain;

  friend bool operator==(const QuestionnaireItem&, const QuestionnaireItem&) = default;
};

struct QuestionnaireInstrument {
  std::vector<QuestionnaireItem> items;
  /// Labels for scores 0..4; [0] is "Not at all".
  std::array<std::string, 5> scale_labels;

  /// Distinct domains in order of first appearance.
  std::vector<std::string> domains() const;
  std::vector<std::string> item_domains() const;

  friend bool operator==(const QuestionnaireInstrument&, const QuestionnaireInstrument&) = default;
};

/// 23 neutral items over the 13 default domains.
const QuestionnaireInstrument& default_instrument();

/// Throws ValidationError unless there are 23 items over exactly 13 domains
/// with nonempty text and five nonempty scale labels.
void validate(const QuestionnaireInstrument& instrument);

/// JSON {items:[{id,text,domain}], scale_labels:[5]}.
QuestionnaireInstrument load_instrument(const std::filesystem::path& path);

void to_json(nlohmann::json& j, const QuestionnaireInstrument& instrument);
void from_json(const nlohmann::json& j, QuestionnaireInstrument& instrument);

}  // namespace miforge::profiler
