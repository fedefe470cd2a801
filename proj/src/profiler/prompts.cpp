#include "miforge/profiler/prompts.h"

#include "miforge/profiler/profiler.h"

namespace miforge::profiler {

backend::ChatRequest profiling_request(const QuestionnaireInstrument& instrument,
                                       const Demographics& demographics) {
  std::string info = "Name: " + demographics.identity;
  if (demographics.age) info += ", Age: " + std::to_string(*demographics.age);
  if (!demographics.gender.empty()) info += ", Gender: " + demographics.gender;

  std::string questions;
  for (std::size_t i = 0; i < instrument.items.size(); ++i) {
    questions += "\n" + std::to_string(i + 1) + ". " + instrument.items[i].text;
  }

  backend::ChatRequest request;
  request.system_prompt =
      "You are now a client seeking psychological counseling. Your basic information: " + info +
      ". Question list:" + questions +
      "\n\nTask: For every question (exactly 23), you must: (1) Choose one integer score from 0 "
      "to 4 (0 = \"" + instrument.scale_labels[0] + "\", 4 = \"" + instrument.scale_labels[4] +
      "\") that best fits the client's feelings. (2) Write one short explanation (1-2 "
      "sentences) reflecting the severity, as if the client were speaking."
      "\nConstraints: The arrays must have exactly 23 elements."
      "\nOutput: {\"scores\": [s1...s23], \"explanations\": [\"exp1\"...\"exp23\"]}";
  request.messages.push_back({"user", "Fill in the questionnaire now. Output valid JSON only."});
  return request;
}

backend::ChatRequest story_request(const ClientProfile& profile,
                                   const QuestionnaireInstrument& instrument,
                                   const std::string& primary_symptom) {
  std::string results;
  std::string explanations;
  for (std::size_t i = 0; i < profile.scores.size(); ++i) {
    const auto& item = instrument.items.at(i);
    const int score = profile.scores[i];
    results += "\n- " + item.text + " [" + item.domain + "]: " + std::to_string(score) + " (" +
               instrument.scale_labels.at(static_cast<std::size_t>(score)) + ")";
    explanations += "\n- " + profile.explanations.at(i);
  }

  backend::ChatRequest request;
  request.system_prompt =
      "Based on the questionnaire screening results, write a first-person narrative (<200 "
      "words).\nRequirements: Choose one primary symptom (most severe). Focus on ONE specific "
      "scene (work, dinner, morning routine). Describe concrete actions and behaviors. Show how "
      "the symptom disrupts normal activity. Use short, direct sentences with minimal "
      "adjectives.\nOutput: Return only the story without additional text.";
  request.messages.push_back({"user", "Questionnaire results:" + results +
                                          "\nUser explanations:" + explanations +
                                          "\nPrimary symptom: " + primary_symptom});
  return request;
}

}  // namespace miforge::profiler
