#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "miforge/backend/scripted.h"
#include "miforge/backend/stub_embedder.h"
#include "miforge/core/errors.h"
#include "miforge/strategy/report.h"

using namespace miforge;
using namespace miforge::strategy;

namespace {

CodeCounts counts(long refl, long ques, long input, long other) {
  CodeCounts c;
  c.counts = {refl, ques, input, other};
  return c;
}

std::shared_ptr<backend::StubEmbedder> stub() {
  auto s = std::make_shared<backend::StubEmbedder>();
  s->add_synonym("tired", "exhausted");
  return s;
}

backend::Backend embedding_backend(std::shared_ptr<backend::StubEmbedder> s = stub()) {
  return backend::Backend(std::make_shared<backend::ScriptedProvider>(), std::move(s));
}

double oracle_kl(const std::array<double, 4>& p, const std::array<double, 4>& q) {
  double kl = 0.0;
  for (int i = 0; i < 4; ++i) kl += p[i] * std::log(p[i] / q[i]);
  return kl;
}

int rank(ReflectionClass c) { return static_cast<int>(c); }

Utterance utt(Speaker s, std::string text, MICode code, int index) {
  return Utterance{s, std::move(text), code, index, {}};
}

}  // namespace

TEST(CodeEntropy, WorkedExample) {
  EXPECT_NEAR(code_entropy(counts(6, 3, 1, 0)), 0.817, 0.001);
}

TEST(CodeEntropy, UniformAndSingle) {
  EXPECT_DOUBLE_EQ(code_entropy(counts(5, 5, 0, 0)), 1.0);
  EXPECT_DOUBLE_EQ(code_entropy(counts(7, 0, 0, 0)), 0.0);
  EXPECT_THROW(code_entropy(counts(0, 0, 0, 0)), UndefinedMetricError);
}

TEST(CodeEntropy, ScaleInvariant) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = counts(rng() % 9, rng() % 9, rng() % 9, rng() % 9);
    if (c.total() == 0) continue;
    const long k = 1 + static_cast<long>(rng() % 7);
    auto scaled = c;
    for (auto& x : scaled.counts) x *= k;
    EXPECT_NEAR(code_entropy(scaled), code_entropy(c), 1e-12);
    EXPECT_NEAR(strategy_adherence(scaled), strategy_adherence(c), 1e-12);
    EXPECT_GE(code_entropy(c), 0.0);
    EXPECT_LE(code_entropy(c), 1.0 + 1e-12);
  }
}

TEST(Adherence, WorkedExample) {
  EXPECT_NEAR(strategy_adherence(counts(6, 3, 1, 0)), 0.909, 0.002);
  EXPECT_NEAR(distribution_adherence({0.6, 0.3, 0.1, 0.0}), 0.909, 0.002);
}

TEST(Adherence, IdealIsNearlyOne) {
  EXPECT_NEAR(distribution_adherence(kIdealDistribution), 1.0, 1e-4);
  EXPECT_NEAR(strategy_adherence(counts(10, 5, 4, 1)), 1.0, 1e-4);
}

TEST(Adherence, AllOtherMatchesOracle) {
  const double e = kSmoothingEpsilon, z = 1.0 + 4 * e;
  const std::array<double, 4> p{e / z, e / z, e / z, (1.0 + e) / z};
  EXPECT_NEAR(strategy_adherence(counts(0, 0, 0, 3)), std::exp(-oracle_kl(p, kIdealDistribution)),
              1e-12);
}

TEST(Adherence, GridMaximumIsIdeal) {
  double best = -1.0;
  std::array<int, 4> arg{};
  for (int a = 0; a <= 100; ++a) {
    for (int b = 0; a + b <= 100; ++b) {
      for (int c = 0; a + b + c <= 100; ++c) {
        const int d = 100 - a - b - c;
        const double v = distribution_adherence({a / 100.0, b / 100.0, c / 100.0, d / 100.0});
        if (v > best) {
          best = v;
          arg = {a, b, c, d};
        }
      }
    }
  }
  EXPECT_EQ(arg, (std::array<int, 4>{50, 25, 20, 5}));
  EXPECT_NEAR(best, 1.0, 1e-4);
}

TEST(RQRatio, Examples) {
  EXPECT_DOUBLE_EQ(reflection_question_ratio(counts(12, 4, 0, 0)), 3.0);
  EXPECT_TRUE(passes_reflection_question(3.0));
  EXPECT_DOUBLE_EQ(reflection_question_ratio(counts(2, 2, 0, 0)), 1.0);
  EXPECT_FALSE(passes_reflection_question(1.0));
  EXPECT_FALSE(passes_reflection_question(2.0));
  EXPECT_THROW(reflection_question_ratio(counts(5, 0, 3, 0)), UndefinedMetricError);
}

TEST(Content, LemmatizedContentTokens) {
  ContentAnalyzer a;
  EXPECT_EQ(a.content_tokens("It sounds like you are exhausted."),
            (std::vector<std::string>{"sound", "exhausted"}));
  EXPECT_EQ(a.content_tokens("I feel so tired."), (std::vector<std::string>{"feel", "tired"}));
  EXPECT_EQ(a.content_tokens("Worries, worries and stories"),
            (std::vector<std::string>{"worry", "story"}));
  EXPECT_EQ(strip_suffix("glasses"), "glass");
  EXPECT_EQ(strip_suffix("stress"), "stress");
  EXPECT_EQ(strip_suffix("anxious"), "anxious");
}

TEST(Similarity, IdenticalOrthogonalAndConfigured) {
  auto backend = embedding_backend();
  EXPECT_NEAR(semantic_similarity({"I feel so tired", "I feel so tired"}, backend), 1.0, 1e-12);
  EXPECT_NEAR(semantic_similarity({"breakfast", "mountains"}, backend), 0.5, 1e-12);
  auto s = stub();
  s->add_synonym("alpha", "beta", 0.4);
  auto configured = embedding_backend(s);
  EXPECT_NEAR(semantic_similarity({"alpha", "beta"}, configured), 0.7, 1e-12);
}

TEST(InformationGain, WorkedExample) {
  auto backend = embedding_backend();
  EXPECT_DOUBLE_EQ(information_gain({"It sounds like you are exhausted", "I feel so tired"}, backend),
                   0.5);
}

TEST(InformationGain, IdentityAndDisjoint) {
  auto backend = embedding_backend();
  EXPECT_DOUBLE_EQ(information_gain({"I feel so tired", "I feel so tired"}, backend), 0.0);
  EXPECT_DOUBLE_EQ(information_gain({"mountains call loudly", "I feel so tired"}, backend), 1.0);
  EXPECT_THROW(information_gain({"you are so", "I feel tired"}, backend), UndefinedMetricError);
}

TEST(Depth, WorkedExampleAndMeans) {
  const ReflectionScores example{0.70, 0.5};
  EXPECT_DOUBLE_EQ(depth_score(example), 0.58);
  const ReflectionScores identity{1.0, 0.0};
  EXPECT_DOUBLE_EQ(depth_score(identity), 0.4);
  const std::vector<ReflectionScores> both{example, identity};
  EXPECT_NEAR(reflection_depth(both), 0.49, 1e-15);
  EXPECT_THROW(reflection_depth(std::vector<ReflectionScores>{}), UndefinedMetricError);
  auto backend = embedding_backend();
  const std::vector<ReflectionPair> same{{"I feel so tired", "I feel so tired"}};
  EXPECT_NEAR(reflection_depth(same, backend), 0.4, 1e-12);
}

TEST(Classify, WorkedExamples) {
  EXPECT_EQ(classify_reflection(ReflectionScores{0.95, 0.0}), ReflectionClass::repeat);
  EXPECT_EQ(classify_reflection(ReflectionScores{0.60, 0.5}), ReflectionClass::paraphrase);
  EXPECT_EQ(classify_reflection(ReflectionScores{0.2, 0.9}), ReflectionClass::summarize);
  const std::vector<ReflectionClass> a4{ReflectionClass::repeat, ReflectionClass::paraphrase};
  EXPECT_DOUBLE_EQ(complex_reflection_ratio(a4), 0.5);
}

TEST(Classify, RatioCounts) {
  using C = ReflectionClass;
  EXPECT_DOUBLE_EQ(complex_reflection_ratio(std::vector<C>(3, C::repeat)), 0.0);
  EXPECT_DOUBLE_EQ(complex_reflection_ratio(std::vector<C>{C::paraphrase, C::paraphrase,
                                                           C::paraphrase, C::rephrase}),
                   0.75);
  EXPECT_FALSE(passes_complex_reflection(0.5));
  EXPECT_TRUE(passes_complex_reflection(0.75));
}

TEST(Classify, GridMonotoneAndPartitioned) {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double sim = i * 0.05, info = j * 0.05;
      const auto c = classify_reflection(ReflectionScores{sim, info});
      if (i < 20) {
        EXPECT_LE(rank(classify_reflection(ReflectionScores{(i + 1) * 0.05, info})), rank(c));
      }
      if (j < 20) {
        EXPECT_GE(rank(classify_reflection(ReflectionScores{sim, (j + 1) * 0.05})), rank(c));
      }
    }
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ReflectionClass> classes;
    const int n = 1 + static_cast<int>(rng() % 10);
    int simple = 0;
    for (int k = 0; k < n; ++k) {
      classes.push_back(classify_reflection(ReflectionScores{u(rng), u(rng)}));
      simple += !is_complex(classes.back());
    }
    EXPECT_NEAR(complex_reflection_ratio(classes), 1.0 - static_cast<double>(simple) / n, 1e-15);
  }
}

TEST(Questions, WorkedExamples) {
  const std::vector<std::string> qs{
      "What about your thoughts on the materials that you mentioned last time? Could you tell me "
      "more about it?",
      "Did you sleep well?", "Did you take medicine last week on time?"};
  EXPECT_EQ(classify_question(qs[0]), QuestionType::open);
  EXPECT_EQ(classify_question(qs[1]), QuestionType::closed);
  EXPECT_NEAR(open_question_ratio(qs), 1.0 / 3.0, 1e-12);
  EXPECT_EQ(classify_question("You slept well."), QuestionType::closed);
  EXPECT_EQ(classify_question("How has your week been?"), QuestionType::open);
  EXPECT_EQ(classify_question("Can you walk me through a typical morning?"), QuestionType::open);
  EXPECT_EQ(classify_question("Is that right?"), QuestionType::closed);
}

TEST(Questions, RatioBoundaries) {
  std::vector<QuestionType> t(7, QuestionType::open);
  t.insert(t.end(), 3, QuestionType::closed);
  EXPECT_NEAR(open_question_ratio(t), 0.7, 1e-15);
  EXPECT_FALSE(passes_open_question(open_question_ratio(t)));
  EXPECT_DOUBLE_EQ(open_question_ratio(std::vector<QuestionType>(4, QuestionType::open)), 1.0);
  EXPECT_THROW(open_question_ratio(std::vector<QuestionType>{}), UndefinedMetricError);
}

TEST(Questions, ClassifierIsPluggable) {
  const std::vector<std::string> qs{"a?", "b?"};
  EXPECT_DOUBLE_EQ(open_question_ratio(qs, [](std::string_view) { return QuestionType::open; }), 1.0);
}

TEST(Report, SessionMetricsSkipGreetingAndPairReflections) {
  SessionRecord r;
  r.session_id = "s";
  int i = 0;
  r.utterances.push_back(utt(Speaker::therapist, "Hi, what brings you here?",
                             MICode::therapist(Category::input, Subtype::affirmation), i++));
  r.utterances.push_back(utt(Speaker::client, "I feel so tired.", MICode::client(Category::neutral), i++));
  r.utterances.push_back(utt(Speaker::therapist, "It sounds like you are exhausted.",
                             MICode::therapist(Category::reflection), i++));
  r.utterances.push_back(utt(Speaker::client, "Yes, work is a lot.", MICode::client(Category::change), i++));
  r.utterances.push_back(utt(Speaker::therapist, "Did you sleep well?",
                             MICode::therapist(Category::question), i++));
  r.utterances.push_back(utt(Speaker::client, "No.", MICode::client(Category::sustain), i++));
  r.utterances.push_back(utt(Speaker::therapist, "Tell me about your evenings.",
                             MICode::therapist(Category::question, Subtype::closed), i++));

  const auto pairs = reflection_pairs(r);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].client_text, "I feel so tired.");

  auto backend = embedding_backend();
  const auto report = evaluate_strategy(r, &backend);
  EXPECT_EQ(report.counts.counts, (std::array<long, 4>{1, 2, 0, 0}));
  EXPECT_DOUBLE_EQ(*report.reflection_question_ratio, 0.5);
  // The second question is hand-coded closed despite its open wording.
  EXPECT_DOUBLE_EQ(*report.open_question_ratio, 0.0);
  ASSERT_TRUE(report.reflection_depth.has_value());
  EXPECT_DOUBLE_EQ(*report.complex_reflection_ratio, 1.0);
  EXPECT_TRUE(report.undefined.empty());

  const auto no_embed = evaluate_strategy(r, nullptr);
  EXPECT_FALSE(no_embed.reflection_depth.has_value());
  EXPECT_EQ(no_embed.undefined.size(), 2u);
}
