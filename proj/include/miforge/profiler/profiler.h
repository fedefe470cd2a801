#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "miforge/backend/backend.h"
#include "miforge/core/profile.h"
#include "miforge/profiler/instrument.h"

namespace miforge::profiler {

struct Demographics {
  std::string identity;
  std::optional<int> age;
  std::string gender;
};

/// Fills in a missing age (uniform over [18, 65]) and gender from a seeded
/// generator.
Demographics sample_demographics(std::string identity, std::uint64_t seed);

struct ProfilerOptions {
  backend::GenerationParams params;
  std::string session_tag;  // event-log attribution
};

/// Asks the model to answer every item with a score and a first-person
/// explanation. Replies with wrong array lengths or out-of-range scores are
/// repaired or rejected by the schema check.
ClientProfile fill_questionnaire(const QuestionnaireInstrument& instrument,
                                 const Demographics& demographics, backend::Backend& backend,
                                 const ProfilerOptions& options = {});

/// Domain holding the highest item score; ties go to the domain that comes
/// first in item order.
std::string primary_symptom(const ClientProfile& profile);

/// Generates the situational story. A reply over the word cap is
/// regenerated once, then cut at a sentence boundary.
SituationalStory generate_story(const ClientProfile& profile,
                                const QuestionnaireInstrument& instrument,
                                backend::Backend& backend, const ProfilerOptions& options = {});

/// Longest prefix of whole sentences within `max_words`; falls back to a
/// plain word cut when the first sentence alone is too long.
std::string truncate_at_sentence(const std::string& story, int max_words);

/// Schema for the profiling reply.
nlohmann::json profile_schema();

}  // namespace miforge::profiler
