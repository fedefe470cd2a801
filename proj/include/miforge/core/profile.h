#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace miforge {

inline constexpr std::size_t kItemCount = 23;
inline constexpr std::size_t kDomainCount = 13;
inline constexpr int kMaxItemScore = 4;
inline constexpr int kMinAge = 18;
inline constexpr int kMaxAge = 65;
inline constexpr int kStoryWordCap = 240;

/// Symptom-domain labels of the default instrument, in instrument order.
const std::array<std::string_view, kDomainCount>& default_domains();

struct ClientProfile {
  std::string identity;
  int age = kMinAge;
  std::string gender;
  std::vector<int> scores;
  std::vector<std::string> explanations;
  /// Domain label of each item, copied from the instrument.
  std::vector<std::string> item_domains;

  friend bool operator==(const ClientProfile&, const ClientProfile&) = default;
};

/// Throws ValidationError when the profile breaks any field constraint.
void validate(const ClientProfile& profile);

int total_severity(const ClientProfile& profile);

struct SituationalStory {
  std::string profile_id;
  std::string text;
  int word_count = 0;
  std::string primary_symptom;

  friend bool operator==(const SituationalStory&, const SituationalStory&) = default;
};

void validate(const SituationalStory& story);

/// Whitespace-token count.
int count_words(std::string_view text);

}  // namespace miforge
