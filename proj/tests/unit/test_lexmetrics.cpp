#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "miforge/core/errors.h"
#include "miforge/lexmetrics/lexmetrics.h"
#include "miforge/lexmetrics/scorer.h"
#include "support/oracles.h"

using namespace miforge;
using namespace miforge::lexmetrics;
using test_support::oracle_bleu;
using test_support::oracle_self_bleu;

namespace {

TokenizedSession session(std::vector<std::string> utterances) {
  return tokenize_session(utterances);
}

TokenizedSession from_tokens(std::vector<std::string> tokens) {
  TokenizedSession s;
  s.all_tokens = tokens;
  s.utterance_tokens.push_back(std::move(tokens));
  return s;
}

TokenizedSession random_session(std::mt19937_64& rng, int utterances, int vocab) {
  std::vector<std::string> texts;
  for (int u = 0; u < utterances; ++u) {
    std::string t;
    const int len = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) t += "w" + std::to_string(rng() % vocab) + " ";
    texts.push_back(t);
  }
  return tokenize_session(texts);
}

}  // namespace

TEST(Tokenize, SessionConcatenatesUtterances) {
  const auto s = session({"Hello, there!", "...", "I'm FINE."});
  ASSERT_EQ(s.utterance_tokens.size(), 2u);
  EXPECT_EQ(s.all_tokens, (std::vector<std::string>{"hello", "there", "i'm", "fine"}));
}

TEST(Entropy, UniformAndSingleType) {
  EXPECT_DOUBLE_EQ(token_entropy(from_tokens({"a", "b", "c", "d"})), 1.0);
  EXPECT_DOUBLE_EQ(token_entropy(from_tokens({"a", "a", "a"})), 0.0);
}

TEST(Entropy, DirectSumOracle) {
  const auto s = from_tokens({"a", "a", "b", "b", "c", "c", "d", "d", "a"});
  const double pa = 3.0 / 9, pb = 2.0 / 9;
  const double h = -(pa * std::log2(pa) + 3 * pb * std::log2(pb));
  EXPECT_NEAR(token_entropy(s), h / 2.0, 1e-12);
}

TEST(Entropy, EmptySessionIsUndefined) {
  EXPECT_THROW(token_entropy(session({})), UndefinedMetricError);
}

TEST(Entropy, PermutationInvariant) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = random_session(rng, 5, 9);
    auto tokens = s.all_tokens;
    const double h = token_entropy(s);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, 1.0 + 1e-12);
    std::shuffle(tokens.begin(), tokens.end(), rng);
    EXPECT_NEAR(token_entropy(from_tokens(tokens)), h, 1e-12);
  }
}

TEST(Distinct2, Examples) {
  EXPECT_DOUBLE_EQ(distinct2(session({"a b c d"})), 1.0);
  EXPECT_DOUBLE_EQ(distinct2(session({"a b a b a"})), 0.5);
  EXPECT_THROW(distinct2(session({"hello", "there"})), UndefinedMetricError);
}

TEST(Distinct2, NoCrossUtteranceBigrams) {
  // Joined, "b c" would be a bigram.
  EXPECT_DOUBLE_EQ(distinct2(session({"a b", "c a b"})), 2.0 / 3.0);
}

TEST(Distinct2, AtMostOneAndOneIffNoRepeat) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_session(rng, 4, 6);
    double d;
    try {
      d = distinct2(s);
    } catch (const UndefinedMetricError&) {
      continue;
    }
    std::map<std::pair<std::string, std::string>, int> seen;
    bool repeat = false;
    for (const auto& u : s.utterance_tokens) {
      for (std::size_t i = 0; i + 1 < u.size(); ++i) repeat |= ++seen[{u[i], u[i + 1]}] > 1;
    }
    EXPECT_LE(d, 1.0);
    EXPECT_EQ(d == 1.0, !repeat);
  }
}

TEST(SelfBleu, IdenticalUtterancesScoreOne) {
  EXPECT_NEAR(self_bleu(session({"i feel so tired today", "i feel so tired today"})), 1.0, 1e-12);
  EXPECT_NEAR(self_bleu(session({"tired", "tired"})), 1.0, 1e-12);
}

TEST(SelfBleu, DisjointUtterancesScoreZero) {
  EXPECT_DOUBLE_EQ(self_bleu(session({"a b c", "d e f"})), 0.0);
}

TEST(SelfBleu, ThreeShortUtterancesMatchOracle) {
  const auto s = session({"i cannot sleep at night", "i sleep badly at night", "night is hard"});
  EXPECT_NEAR(self_bleu(s), oracle_self_bleu(s), 1e-12);
  EXPECT_GT(self_bleu(s), 0.0);
  EXPECT_LT(self_bleu(s), 1.0);
}

TEST(SelfBleu, RandomSessionsMatchOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_session(rng, 2 + static_cast<int>(rng() % 6), 5);
    EXPECT_NEAR(self_bleu(s), oracle_self_bleu(s), 1e-12);
  }
}

TEST(SelfBleu, InvariantUnderReordering) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_session(rng, 6, 5);
    const double before = self_bleu(s);
    std::shuffle(s.utterance_tokens.begin(), s.utterance_tokens.end(), rng);
    EXPECT_NEAR(self_bleu(s), before, 1e-12);
  }
}

TEST(SelfBleu, ParallelMatchesSerialBitForBit) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_session(rng, 40, 30);
    EXPECT_EQ(self_bleu(s), self_bleu_serial(s));
  }
}

TEST(SelfBleu, NeedsTwoUtterances) {
  EXPECT_THROW(self_bleu(session({"only one here"})), UndefinedMetricError);
}

TEST(Perplexity, UniformScorerGivesVocabularySize) {
  std::mt19937_64 rng(6);
  for (std::size_t v : {1u, 7u, 50u}) {
    const auto s = random_session(rng, 5, static_cast<int>(v));
    EXPECT_NEAR(perplexity(s, UniformScorer(v)), static_cast<double>(v), 1e-9 * v);
  }
}

TEST(Perplexity, CertainScorerGivesOne) {
  EXPECT_DOUBLE_EQ(perplexity(session({"anything at all"}), CertainScorer{}), 1.0);
}

TEST(Perplexity, TrigramClosedForm) {
  TrigramScorer scorer;
  scorer.fit({"a b a b a b"});
  ASSERT_EQ(scorer.vocabulary_size(), 3u);  // a, b, <unk>
  // p(a|<s><s>) = 2/4, p(b|<s>a) = 2/4, p(a|ab) = 3/5, p(b|ba) = 3/5
  EXPECT_DOUBLE_EQ(scorer.probability("<s>", "<s>", "a"), 0.5);
  EXPECT_DOUBLE_EQ(scorer.probability("a", "b", "a"), 0.6);
  const double expected = 1.0 / std::sqrt(0.5 * 0.6);
  EXPECT_NEAR(perplexity(session({"a b a b"}), scorer), expected, 1e-12);
}

TEST(Perplexity, UnknownTokensMapToUnk) {
  TrigramScorer scorer;
  scorer.fit({"a b"});
  EXPECT_DOUBLE_EQ(scorer.probability("<s>", "<s>", "zebra"), 1.0 / 4.0);
  EXPECT_DOUBLE_EQ(scorer.probability("<s>", "<s>", "zebra"), scorer.probability("<s>", "<s>", "<unk>"));
}

TEST(Perplexity, TrigramDistributionSumsToOne) {
  TrigramScorer scorer;
  scorer.fit({"the cat sat", "the dog sat down", "a cat"});
  for (const auto& [u, v] : std::vector<std::pair<std::string, std::string>>{
           {"<s>", "<s>"}, {"the", "cat"}, {"cat", "sat"}, {"zebra", "zebra"}}) {
    double total = 0.0;
    for (const char* w : {"the", "cat", "sat", "dog", "down", "a", "<unk>"}) {
      total += scorer.probability(u, v, w);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Perplexity, UnfittedScorerAndEmptySessionAreErrors) {
  TrigramScorer scorer;
  EXPECT_THROW(perplexity(session({"a"}), scorer), ValidationError);
  scorer.fit({"a"});
  EXPECT_THROW(perplexity(session({}), scorer), UndefinedMetricError);
}

TEST(Perplexity, FitsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "miforge_ref.txt";
  {
    std::ofstream out(path);
    out << "a b a b a b\n";
  }
  TrigramScorer scorer;
  scorer.fit_file(path);
  EXPECT_NEAR(perplexity(session({"a b a b"}), scorer), 1.0 / std::sqrt(0.3), 1e-12);
  std::filesystem::remove(path);
}

TEST(Metrics, ArePureFunctions) {
  const auto s = session({"so you have been tired", "yes very tired and sad", "what helps you"});
  TrigramScorer scorer;
  scorer.fit({"you have been tired", "what helps"});
  EXPECT_EQ(token_entropy(s), token_entropy(s));
  EXPECT_EQ(distinct2(s), distinct2(s));
  EXPECT_EQ(self_bleu(s), self_bleu(s));
  EXPECT_EQ(perplexity(s, scorer), perplexity(s, scorer));
}
