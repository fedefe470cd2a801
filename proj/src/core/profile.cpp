#include "miforge/core/profile.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "miforge/core/errors.h"

namespace miforge {

const std::array<std::string_view, kDomainCount>& default_domains() {
  static constexpr std::array<std::string_view, kDomainCount> kDomains{
      "depression",
      "anger",
      "mania",
      "anxiety",
      "somatic symptoms",
      "suicidal ideation",
      "psychosis",
      "sleep problems",
      "memory",
      "repetitive thoughts and behaviors",
      "dissociation",
      "personality functioning",
      "substance use",
  };
  return kDomains;
}

void validate(const ClientProfile& profile) {
  if (profile.age < kMinAge || profile.age > kMaxAge) {
    throw ValidationError("age " + std::to_string(profile.age) + " outside [18, 65]");
  }
  if (profile.scores.size() != kItemCount) {
    throw ValidationError("expected 23 scores, got " + std::to_string(profile.scores.size()));
  }
  if (profile.explanations.size() != kItemCount) {
    throw ValidationError("expected 23 explanations, got " +
                          std::to_string(profile.explanations.size()));
  }
  if (profile.item_domains.size() != kItemCount) {
    throw ValidationError("expected 23 item domains, got " +
                          std::to_string(profile.item_domains.size()));
  }
  for (std::size_t i = 0; i < kItemCount; ++i) {
    if (profile.scores[i] < 0 || profile.scores[i] > kMaxItemScore) {
      throw ValidationError("score " + std::to_string(profile.scores[i]) + " at item " +
                            std::to_string(i + 1) + " outside [0, 4]");
    }
    if (profile.explanations[i].find_first_not_of(" \t\r\n") == std::string::npos) {
      throw ValidationError("empty explanation at item " + std::to_string(i + 1));
    }
  }
  std::set<std::string> domains(profile.item_domains.begin(), profile.item_domains.end());
  if (domains.size() != kDomainCount) {
    throw ValidationError("domain map covers " + std::to_string(domains.size()) +
                          " domains, expected 13");
  }
}

int total_severity(const ClientProfile& profile) {
  return std::accumulate(profile.scores.begin(), profile.scores.end(), 0);
}

int count_words(std::string_view text) {
  std::istringstream in{std::string(text)};
  int n = 0;
  std::string word;
  while (in >> word) ++n;
  return n;
}

void validate(const SituationalStory& story) {
  if (story.word_count != count_words(story.text)) {
    throw ValidationError("story word_count does not match its text");
  }
  if (story.word_count > kStoryWordCap) {
    throw ValidationError("story exceeds the 240-word cap");
  }
  if (story.primary_symptom.empty()) throw ValidationError("story has no primary symptom");
}

}  // namespace miforge
