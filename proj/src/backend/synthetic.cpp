#include <array>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "miforge/backend/scripted.h"
#include "miforge/core/text.h"

namespace miforge::backend {

namespace {

using nlohmann::json;

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& bank, std::uint64_t h) {
  return bank[h % N];
}

std::uint64_t mix(std::uint64_t h, std::uint64_t k) {
  h ^= k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 29);
}

/// Value following "label" up to end of line, trimmed.
std::string after_label(std::string_view prompt, std::string_view label) {
  auto pos = prompt.rfind(label);
  if (pos == std::string_view::npos) return {};
  auto start = pos + label.size();
  auto end = prompt.find('\n', start);
  return std::string(text::trim(prompt.substr(start, end - start)));
}

constexpr std::array<std::string_view, 8> kOpeners{
    "Honestly,", "Well,", "I guess", "To be fair,", "Lately", "You know,", "I mean,", "Mostly"};

constexpr std::array<std::string_view, 10> kChange{
    "I want to start going to bed before midnight so I can think straight at work.",
    "I could try calling my sister once a week, she always helps me calm down.",
    "I really need to cut back on the drinking before it costs me my job.",
    "I think I can manage a short walk after dinner, that seemed to help last spring.",
    "I'm ready to tell my manager that the deadlines are too much for me right now.",
    "If I wrote down what worries me, maybe it would stop spinning in my head.",
    "I'd like to get back to cooking real meals instead of skipping them.",
    "I already put my phone in the kitchen last night and slept a bit better.",
    "My kids are the reason I want to handle my temper differently.",
    "I'm going to book that doctor's appointment I keep putting off.",
};

constexpr std::array<std::string_view, 10> kSustain{
    "I don't really see the point, everyone at work stays up late anyway.",
    "Drinking is the only thing that takes the edge off after a long shift.",
    "I've tried breathing exercises before and they never did anything for me.",
    "It's easier to just stay home than deal with people asking questions.",
    "I'm too busy to fit anything new into my week right now.",
    "Talking about it just makes me feel worse, so I'd rather not.",
    "My routine works well enough, I don't want to shake it up.",
    "Nothing I do changes how tired I feel, so why bother trying.",
    "Honestly the arguments are mostly his fault, not mine.",
    "I don't think I'm as bad as my family says I am.",
};

constexpr std::array<std::string_view, 10> kNeutral{
    "I had a long day at the office and the train was late again.",
    "My mornings start around six, I make coffee and check my email.",
    "We moved to this apartment last year, it's smaller than the old place.",
    "I work in accounts at a logistics company, mostly spreadsheets.",
    "My sister visited on Sunday and we watched a movie.",
    "I've been thinking about what you asked last time.",
    "The weekend was quiet, I mostly stayed in and cleaned.",
    "I still feel a bit restless when I sit down in the evening.",
    "Work has been the same as usual, lots of meetings.",
    "I noticed I checked the door lock three times before leaving.",
};

constexpr std::array<std::string_view, 10> kReflection{
    "So part of you is worn out, and another part is looking for a way through this.",
    "You're noticing how much the late nights are costing you at work.",
    "It's been hard to find any room to breathe between everything on your plate.",
    "You care a lot about your family, and that matters to you when you think about changing.",
    "You've tried things before and felt let down when they didn't stick.",
    "There is a real pull between staying comfortable and wanting something different.",
    "You already took a first step, and you noticed it made a difference.",
    "Being around people feels draining right now, so staying home feels safer.",
    "You want your evenings back, without the constant worry humming underneath.",
    "Your body has been telling you it needs more rest than it is getting.",
};

constexpr std::array<std::string_view, 8> kOpenQuestion{
    "What would a good week look like for you?",
    "How do you usually feel right after one of those evenings?",
    "What makes this feel important to you right now?",
    "How have you handled moments like this before?",
    "What would need to change for that step to feel doable?",
    "Tell me more about what happens just before the worry starts.",
    "What do you think your sister sees when she notices you struggling?",
    "How would your mornings be different if you slept better?",
};

constexpr std::array<std::string_view, 4> kClosedQuestion{
    "Did you manage to sleep at all last night?",
    "Is work the main place this shows up?",
    "Have you talked to anyone else about this?",
    "Do you want to try that this week?",
};

constexpr std::array<std::string_view, 8> kInput{
    "Many people find that a fixed wake-up time helps more than an early bedtime.",
    "One option is to write the worries down at a set time each evening.",
    "It took courage to come in today and talk about this.",
    "Some people set a small goal, like one short walk, and build from there.",
    "Cutting back gradually is often easier to stick with than stopping all at once.",
    "You showed a lot of persistence by keeping that routine going.",
    "A doctor can also check whether something physical is adding to the tiredness.",
    "It might help to plan one calm activity for the evenings ahead of time.",
};

constexpr std::array<std::string_view, 8> kStorySentences{
    "I sit at my desk and stare at the same email for ten minutes.",
    "My coffee goes cold next to the keyboard.",
    "A colleague asks me a question and I forget it before I answer.",
    "At lunch I stay in my chair instead of going out with the team.",
    "I reread the report three times and still miss the numbers.",
    "When the phone rings my chest tightens.",
    "I leave early and tell my manager I have an appointment.",
    "On the bus home I keep thinking about what I got wrong.",
};

constexpr std::array<std::string_view, 6> kStoryEndings{
    "At home I drop my bag and lie on the couch until it is dark.",
    "I skip dinner and scroll on my phone until two in the morning.",
    "I tell myself tomorrow will be different, but I do not believe it.",
    "I cancel the plans I made with my friend for the weekend.",
    "I open a beer and then another one.",
    "I set three alarms for the morning and still dread waking up.",
};

constexpr std::array<std::string_view, 5> kExplanations{
    "I don't really notice this much.",
    "It happens now and then, but it doesn't bother me a lot.",
    "I notice this several days, and it gets in the way sometimes.",
    "This is there most days and it's hard to ignore.",
    "This is with me almost all the time and it wears me down.",
};

std::string client_reply(std::string_view code, std::uint64_t h) {
  std::string first;
  if (code == "change") {
    first = std::string(pick(kChange, h));
  } else if (code == "sustain") {
    first = std::string(pick(kSustain, h));
  } else {
    first = std::string(pick(kNeutral, h));
  }
  std::string second(pick(kNeutral, mix(h, 7)));
  return std::string(pick(kOpeners, mix(h, 3))) + " " + first + " " + second;
}

std::string therapist_reply(std::string_view code, std::uint64_t h, bool wrap_up) {
  std::string out;
  if (code == "reflection") {
    out = std::string(pick(kReflection, h));
  } else if (code == "question") {
    // Roughly three open questions for every closed one.
    out = (h % 4 == 0) ? std::string(pick(kClosedQuestion, mix(h, 5)))
                       : std::string(pick(kOpenQuestion, mix(h, 5)));
  } else if (code == "therapist_input") {
    out = std::string(pick(kInput, h));
  } else {
    // No selected code: pick any style.
    switch (h % 3) {
      case 0: out = std::string(pick(kReflection, mix(h, 9))); break;
      case 1: out = std::string(pick(kOpenQuestion, mix(h, 9))); break;
      default: out = std::string(pick(kInput, mix(h, 9))); break;
    }
  }
  if (wrap_up) out += " Thank you for talking with me today. Goodbye, take care.";
  return out;
}

}  // namespace

Responder synthetic_responder(std::uint64_t seed) {
  return [seed](const ChatRequest& request) -> std::optional<std::string> {
    const std::string prompt = prompt_text(request);
    const std::uint64_t h = mix(text::fnv1a(prompt), seed);
    switch (request.role) {
      case CallRole::profile: {
        json scores = json::array();
        json explanations = json::array();
        for (int i = 0; i < 23; ++i) {
          const auto r = mix(h, static_cast<std::uint64_t>(i));
          // Skewed towards low severity, like a screening population.
          const int s = static_cast<int>((r % 10 < 4) ? 0 : (r % 10 < 6) ? 1 : (r % 10 < 8) ? 2
                                                                        : (r % 10 < 9) ? 3 : 4);
          scores.push_back(s);
          explanations.push_back(std::string(kExplanations[static_cast<std::size_t>(s)]));
        }
        return json{{"scores", scores}, {"explanations", explanations}}.dump();
      }
      case CallRole::story: {
        std::string story = "This morning I wake up before my alarm and lie still.";
        for (int i = 0; i < 7; ++i) {
          story += " ";
          story += pick(kStorySentences, mix(h, static_cast<std::uint64_t>(i) + 11));
        }
        story += " ";
        story += pick(kStoryEndings, mix(h, 99));
        return story;
      }
      case CallRole::greeting:
        return std::string("Hi, thanks for coming in today. I'm glad you're here. "
                           "What would you like to talk about?");
      case CallRole::client:
        return client_reply(after_label(prompt, "Target client MI code:"), h);
      case CallRole::therapist: {
        const bool wrap = prompt.find("final exchange") != std::string::npos;
        return therapist_reply(after_label(prompt, "Selected Code:"), h, wrap);
      }
      case CallRole::selector: {
        static constexpr std::array<std::string_view, 3> kClient{"change", "sustain", "neutral"};
        static constexpr std::array<std::string_view, 10> kTherapist{
            "reflection", "reflection", "reflection", "reflection", "reflection",
            "question",   "question",   "question",   "therapist_input", "therapist_input"};
        return json{{"client_mi_code", std::string(pick(kClient, h))},
                    {"therapist_mi_code", std::string(pick(kTherapist, mix(h, 1)))}}
            .dump();
      }
      case CallRole::monitor: {
        const auto length = 11 + static_cast<int>(text::fnv1a(request.session_id, seed) % 10);
        const bool farewell = prompt.find("Goodbye, take care") != std::string::npos;
        const bool done = farewell || request.turn >= length;
        return json{{"result", done ? "complete" : "continue"},
                    {"reason", done ? "closing cues present" : "conversation still developing"}}
            .dump();
      }
      case CallRole::judge: {
        json scores;
        const char* dims[] = {"coherence", "depth", "progress", "naturalness", "empathy", "adherence"};
        for (int i = 0; i < 6; ++i) {
          scores[dims[i]] = 3 + static_cast<int>(mix(h, static_cast<std::uint64_t>(i) + 40) % 3);
        }
        return scores.dump();
      }
      case CallRole::other:
        return std::nullopt;
    }
    return std::nullopt;
  };
}

}  // namespace miforge::backend
