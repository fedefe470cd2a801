#include <algorithm>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "miforge/backend/errors.h"
#include "miforge/core/errors.h"
#include "miforge/profiler/profiler.h"
#include "support/scripted_session.h"

using namespace miforge;
using namespace miforge::profiler;
using nlohmann::json;

namespace {

json profile_reply(std::vector<int> scores) {
  std::vector<std::string> explanations;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    explanations.push_back("I have noticed this " + std::to_string(scores[i]) + " times.");
  }
  return json{{"scores", scores}, {"explanations", explanations}};
}

std::vector<int> random_scores(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, kMaxItemScore);
  std::vector<int> s(kItemCount);
  for (auto& x : s) x = d(rng);
  return s;
}

ClientProfile profile_with(std::vector<int> scores) {
  auto p = test_support::sample_profile();
  p.scores = std::move(scores);
  return p;
}

// Independent oracle: per-domain maxima, then the earliest domain among the
// maxima in item order.
std::string oracle_primary(const ClientProfile& p) {
  std::map<std::string, int> best;
  for (std::size_t i = 0; i < p.scores.size(); ++i) {
    best[p.item_domains[i]] = std::max(best[p.item_domains[i]], p.scores[i]);
  }
  int top = -1;
  for (const auto& [_, v] : best) top = std::max(top, v);
  for (std::size_t i = 0; i < p.scores.size(); ++i) {
    if (best[p.item_domains[i]] == top) return p.item_domains[i];
  }
  return {};
}

std::string words(int n, const std::string& sentence_end = ".") {
  std::string out;
  for (int i = 0; i < n; ++i) {
    out += "word";
    if ((i + 1) % 10 == 0) out += sentence_end;
    out += ' ';
  }
  return out;
}

Demographics demo() { return {"client-7", 40, "male"}; }

}  // namespace

TEST(Instrument, DefaultIsValidWith23ItemsOver13Domains) {
  const auto& inst = default_instrument();
  EXPECT_NO_THROW(validate(inst));
  EXPECT_EQ(inst.items.size(), kItemCount);
  EXPECT_EQ(inst.domains().size(), kDomainCount);
  for (std::size_t d = 0; d < kDomainCount; ++d) {
    EXPECT_EQ(inst.domains()[d], default_domains()[d]);
  }
}

TEST(Instrument, JsonRoundTrip) {
  const json j = default_instrument();
  EXPECT_EQ(j.get<QuestionnaireInstrument>(), default_instrument());
}

TEST(Demographics, SampledAgeStaysInRangeAndIsSeeded) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto d = sample_demographics("x", seed);
    ASSERT_TRUE(d.age.has_value());
    EXPECT_GE(*d.age, kMinAge);
    EXPECT_LE(*d.age, kMaxAge);
    EXPECT_EQ(d.age, sample_demographics("x", seed).age);
  }
}

TEST(Profile, ValidReplyIsAccepted) {
  std::mt19937_64 rng(3);
  const auto scores = random_scores(rng);
  auto provider = std::make_shared<backend::ScriptedProvider>();
  provider->push(backend::CallRole::profile, profile_reply(scores).dump());
  backend::Backend backend(provider);
  const auto p = fill_questionnaire(default_instrument(), demo(), backend);
  EXPECT_EQ(p.scores, scores);
  EXPECT_EQ(p.identity, "client-7");
  EXPECT_EQ(p.age, 40);
  EXPECT_EQ(p.item_domains, default_instrument().item_domains());
  EXPECT_EQ(backend.call_count(), 1);
}

TEST(Profile, TwentyTwoItemsTriggerRepairThenError) {
  auto provider = std::make_shared<backend::ScriptedProvider>();
  const auto short_reply = profile_reply(std::vector<int>(22, 1)).dump();
  for (int i = 0; i < 4; ++i) provider->push(backend::CallRole::profile, short_reply);
  backend::Backend backend(provider);
  EXPECT_THROW(fill_questionnaire(default_instrument(), demo(), backend),
               backend::StructuredOutputError);
  // The second request carried the repair instruction.
  const auto seen = provider->captured();
  ASSERT_GE(seen.size(), 2u);
  EXPECT_NE(seen[1].messages.back().content.find(backend::kRepairInstruction), std::string::npos);
}

TEST(Profile, OutOfRangeScoreIsRejected) {
  auto scores = std::vector<int>(kItemCount, 2);
  scores[7] = 5;
  auto provider = std::make_shared<backend::ScriptedProvider>();
  for (int i = 0; i < 4; ++i) provider->push(backend::CallRole::profile, profile_reply(scores).dump());
  backend::Backend backend(provider);
  EXPECT_THROW(fill_questionnaire(default_instrument(), demo(), backend),
               backend::StructuredOutputError);
}

TEST(Profile, RepairedReplyIsAccepted) {
  auto provider = std::make_shared<backend::ScriptedProvider>();
  provider->push(backend::CallRole::profile, "The scores are as follows: 1, 2, 3");
  provider->push(backend::CallRole::profile, profile_reply(std::vector<int>(kItemCount, 0)).dump());
  backend::Backend backend(provider);
  EXPECT_EQ(total_severity(fill_questionnaire(default_instrument(), demo(), backend)), 0);
}

TEST(Profile, FuzzedRepliesNeverYieldInvalidProfiles) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    json reply = profile_reply(random_scores(rng));
    switch (rng() % 6) {
      case 0: reply["scores"].erase(0); break;
      case 1: reply["scores"][rng() % kItemCount] = -1; break;
      case 2: reply["explanations"][rng() % kItemCount] = "   "; break;
      case 3: reply.erase("explanations"); break;
      case 4: reply["scores"][0] = "three"; break;
      default: break;
    }
    auto provider = std::make_shared<backend::ScriptedProvider>();
    provider->push(backend::CallRole::profile, reply.dump());
    backend::Backend backend(provider);
    ProfilerOptions opt;
    opt.params.max_retries = 0;
    try {
      const auto p = fill_questionnaire(default_instrument(), demo(), backend, opt);
      EXPECT_NO_THROW(validate(p));
    } catch (const backend::StructuredOutputError&) {
    }
  }
}

TEST(Profile, ValidateRejectsBadFields) {
  auto p = test_support::sample_profile();
  EXPECT_NO_THROW(validate(p));
  auto young = p;
  young.age = 17;
  EXPECT_THROW(validate(young), ValidationError);
  auto old = p;
  old.age = 66;
  EXPECT_THROW(validate(old), ValidationError);
  auto blank = p;
  blank.explanations[3] = "";
  EXPECT_THROW(validate(blank), ValidationError);
}

TEST(Severity, KnownTotals) {
  EXPECT_EQ(total_severity(profile_with(std::vector<int>(kItemCount, 0))), 0);
  EXPECT_EQ(total_severity(profile_with(std::vector<int>(kItemCount, 4))), 92);
  auto s = std::vector<int>(kItemCount, 0);
  s[0] = 4;
  s[5] = 4;
  s[10] = 3;
  EXPECT_EQ(total_severity(profile_with(s)), 11);
}

TEST(Severity, PermutationInvariantAndBounded) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_scores(rng);
    const int total = total_severity(profile_with(s));
    EXPECT_GE(total, 0);
    EXPECT_LE(total, 92);
    std::shuffle(s.begin(), s.end(), rng);
    EXPECT_EQ(total_severity(profile_with(s)), total);
  }
}

TEST(PrimarySymptom, MatchesOracleOnRandomProfiles) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = profile_with(random_scores(rng));
    EXPECT_EQ(primary_symptom(p), oracle_primary(p));
  }
}

TEST(PrimarySymptom, ArgmaxTieAndAllZero) {
  const auto& domains = default_instrument().item_domains();
  auto s = std::vector<int>(kItemCount, 1);
  s[kItemCount - 1] = 4;
  EXPECT_EQ(primary_symptom(profile_with(s)), domains[kItemCount - 1]);

  s[kItemCount - 1] = 3;
  s[12] = 3;
  EXPECT_EQ(primary_symptom(profile_with(s)), domains[12]);

  EXPECT_EQ(primary_symptom(profile_with(std::vector<int>(kItemCount, 0))), domains[0]);
}

TEST(Story, LongReplyIsRegeneratedThenTruncated) {
  auto provider = std::make_shared<backend::ScriptedProvider>();
  provider->push(backend::CallRole::story, words(250));
  provider->push(backend::CallRole::story, words(260));
  backend::Backend backend(provider);
  const auto profile = test_support::sample_profile();
  const auto story = generate_story(profile, default_instrument(), backend);
  EXPECT_LE(story.word_count, kStoryWordCap);
  EXPECT_EQ(story.word_count, 240);
  EXPECT_EQ(story.text.back(), '.');
  EXPECT_EQ(backend.call_count(), 2);
  const auto seen = provider->captured();
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[1].messages.size(), 3u);
}

TEST(Story, ShortReplyKeptAsIs) {
  auto provider = std::make_shared<backend::ScriptedProvider>();
  provider->push(backend::CallRole::story, "  I wake at four and cannot fall back asleep.  ");
  backend::Backend backend(provider);
  const auto profile = test_support::sample_profile();
  const auto story = generate_story(profile, default_instrument(), backend);
  EXPECT_EQ(story.text, "I wake at four and cannot fall back asleep.");
  EXPECT_EQ(story.word_count, 9);
  EXPECT_EQ(story.primary_symptom, primary_symptom(profile));
  EXPECT_EQ(story.profile_id, profile.identity);
  EXPECT_EQ(backend.call_count(), 1);
  EXPECT_NE(provider->captured()[0].messages[0].content.find(story.primary_symptom),
            std::string::npos);
}

TEST(Story, TruncationKeepsWholeSentences) {
  const std::string text = "One two three. Four five six. Seven eight nine ten.";
  EXPECT_EQ(truncate_at_sentence(text, 7), "One two three. Four five six.");
  EXPECT_EQ(truncate_at_sentence(text, 100), text);
  EXPECT_EQ(truncate_at_sentence("a b c d e f", 3), "a b c");
}

TEST(Story, TruncationNeverExceedsCap) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    const int n = 50 + static_cast<int>(rng() % 400);
    for (int i = 0; i < n; ++i) {
      text += "w" + std::to_string(i);
      text += (rng() % 7 == 0) ? ". " : " ";
    }
    const int cap = 1 + static_cast<int>(rng() % 300);
    EXPECT_LE(count_words(truncate_at_sentence(text, cap)), cap);
  }
}

TEST(Story, SyntheticResponderProducesValidStory) {
  auto provider = std::make_shared<backend::ScriptedProvider>();
  provider->set_fallback(backend::synthetic_responder(1));
  backend::Backend backend(provider);
  const auto profile = fill_questionnaire(default_instrument(), demo(), backend);
  const auto story = generate_story(profile, default_instrument(), backend);
  EXPECT_NO_THROW(validate(story));
  EXPECT_GT(story.word_count, 0);
}
