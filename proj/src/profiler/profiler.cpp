#include "miforge/profiler/profiler.h"

#include <random>
#include <sstream>

#include "miforge/core/errors.h"
#include "miforge/core/text.h"
#include "miforge/profiler/prompts.h"

namespace miforge::profiler {

using nlohmann::json;

Demographics sample_demographics(std::string identity, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> age(kMinAge, kMaxAge);
  static constexpr std::array<const char*, 3> kGenders{"female", "male", "non-binary"};
  Demographics d;
  d.identity = std::move(identity);
  d.age = age(rng);
  d.gender = kGenders[rng() % kGenders.size()];
  return d;
}

json profile_schema() {
  return json{
      {"type", "object"},
      {"required", {"scores", "explanations"}},
      {"properties",
       {{"scores",
         {{"type", "array"},
          {"minItems", kItemCount},
          {"maxItems", kItemCount},
          {"items", {{"type", "integer"}, {"minimum", 0}, {"maximum", kMaxItemScore}}}}},
        {"explanations",
         {{"type", "array"},
          {"minItems", kItemCount},
          {"maxItems", kItemCount},
          {"items", {{"type", "string"}, {"minLength", 1}}}}}}}};
}

ClientProfile fill_questionnaire(const QuestionnaireInstrument& instrument,
                                 const Demographics& demographics, backend::Backend& backend,
                                 const ProfilerOptions& options) {
  validate(instrument);
  backend::ChatRequest request = profiling_request(instrument, demographics);
  request.json_schema = profile_schema();
  request.params = options.params;
  request.role = backend::CallRole::profile;
  request.session_id = options.session_tag;

  const json reply = backend.chat_structured(request);

  ClientProfile profile;
  profile.identity = demographics.identity;
  profile.age = demographics.age.value_or(kMinAge);
  profile.gender = demographics.gender;
  profile.scores = reply.at("scores").get<std::vector<int>>();
  profile.explanations = reply.at("explanations").get<std::vector<std::string>>();
  profile.item_domains = instrument.item_domains();
  validate(profile);
  return profile;
}

std::string primary_symptom(const ClientProfile& profile) {
  std::vector<std::string> order;
  std::vector<int> best;
  for (std::size_t i = 0; i < profile.item_domains.size(); ++i) {
    const auto& domain = profile.item_domains[i];
    auto it = std::find(order.begin(), order.end(), domain);
    if (it == order.end()) {
      order.push_back(domain);
      best.push_back(profile.scores.at(i));
    } else {
      auto& slot = best[static_cast<std::size_t>(it - order.begin())];
      slot = std::max(slot, profile.scores.at(i));
    }
  }
  if (order.empty()) throw ValidationError("profile has no domains");
  std::size_t arg = 0;
  for (std::size_t d = 1; d < best.size(); ++d) {
    if (best[d] > best[arg]) arg = d;
  }
  return order[arg];
}

std::string truncate_at_sentence(const std::string& story, int max_words) {
  if (count_words(story) <= max_words) return story;
  std::string kept;
  int kept_words = 0;
  std::size_t start = 0;
  while (start < story.size()) {
    std::size_t end = start;
    while (end < story.size()) {
      const char c = story[end];
      ++end;
      if ((c == '.' || c == '!' || c == '?') &&
          (end == story.size() || std::isspace(static_cast<unsigned char>(story[end])))) {
        break;
      }
    }
    const std::string sentence(text::trim(std::string_view(story).substr(start, end - start)));
    const int words = count_words(sentence);
    if (kept_words + words > max_words) break;
    if (!sentence.empty()) {
      if (!kept.empty()) kept += ' ';
      kept += sentence;
      kept_words += words;
    }
    start = end;
  }
  if (kept_words > 0) return kept;

  std::istringstream in(story);
  std::string word;
  for (int i = 0; i < max_words && in >> word; ++i) {
    if (!kept.empty()) kept += ' ';
    kept += word;
  }
  return kept;
}

SituationalStory generate_story(const ClientProfile& profile,
                                const QuestionnaireInstrument& instrument,
                                backend::Backend& backend, const ProfilerOptions& options) {
  validate(profile);
  SituationalStory story;
  story.profile_id = profile.identity;
  story.primary_symptom = primary_symptom(profile);

  backend::ChatRequest request = story_request(profile, instrument, story.primary_symptom);
  request.params = options.params;
  request.role = backend::CallRole::story;
  request.session_id = options.session_tag;

  std::string body(text::trim(backend.chat(request)));
  if (count_words(body) > kStoryWordCap) {
    const int first_length = count_words(body);
    request.messages.push_back({"assistant", body});
    request.messages.push_back(
        {"user", "That story has " + std::to_string(first_length) +
                     " words. Rewrite it in under 200 words, keeping the same scene."});
    body = std::string(text::trim(backend.chat(request)));
    body = truncate_at_sentence(body, kStoryWordCap);
  }
  story.text = body;
  story.word_count = count_words(body);
  validate(story);
  return story;
}

}  // namespace miforge::profiler
