#include "miforge/lexmetrics/lexmetrics.h"

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "miforge/core/errors.h"
#include "miforge/core/text.h"

namespace miforge::lexmetrics {

namespace {

using NgramCounts = std::unordered_map<std::string, int>;

std::string join(const std::vector<std::string>& tokens, std::size_t start, std::size_t n) {
  std::string key = tokens[start];
  for (std::size_t i = start + 1; i < start + n; ++i) {
    key += '\x1f';
    key += tokens[i];
  }
  return key;
}

NgramCounts ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts out;
  if (tokens.size() < n) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) ++out[join(tokens, i, n)];
  return out;
}

// Per-utterance n-gram tables for n = 1..4.
struct Indexed {
  std::vector<std::array<NgramCounts, 4>> counts;
};

Indexed index(const TokenizedSession& s) {
  Indexed idx;
  idx.counts.resize(s.utterance_tokens.size());
  for (std::size_t u = 0; u < s.utterance_tokens.size(); ++u) {
    for (std::size_t n = 1; n <= 4; ++n) idx.counts[u][n - 1] = ngram_counts(s.utterance_tokens[u], n);
  }
  return idx;
}

double bleu_from_counts(std::size_t candidate_index, const TokenizedSession& s,
                        const Indexed& idx) {
  const auto& cand = s.utterance_tokens[candidate_index];
  const std::size_t c = cand.size();
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto& mine = idx.counts[candidate_index][n - 1];
    int clipped = 0;
    for (const auto& [gram, count] : mine) {
      int best = 0;
      for (std::size_t r = 0; r < s.utterance_tokens.size(); ++r) {
        if (r == candidate_index) continue;
        const auto& theirs = idx.counts[r][n - 1];
        auto it = theirs.find(gram);
        if (it != theirs.end() && it->second > best) best = it->second;
      }
      clipped += std::min(count, best);
    }
    const int total = c >= n ? static_cast<int>(c - n + 1) : 0;
    if (n == 1) {
      if (clipped == 0) return 0.0;
      log_sum += std::log(static_cast<double>(clipped) / total);
    } else {
      log_sum += std::log((clipped + 1.0) / (total + 1.0));
    }
  }
  std::size_t r_len = 0;
  std::size_t best_gap = static_cast<std::size_t>(-1);
  for (std::size_t r = 0; r < s.utterance_tokens.size(); ++r) {
    if (r == candidate_index) continue;
    const std::size_t len = s.utterance_tokens[r].size();
    const std::size_t gap = len > c ? len - c : c - len;
    if (gap < best_gap || (gap == best_gap && len < r_len)) {
      best_gap = gap;
      r_len = len;
    }
  }
  const double bp = c > r_len ? 1.0 : std::exp(1.0 - static_cast<double>(r_len) / c);
  return bp * std::exp(log_sum / 4.0);
}

void require_pairs(const TokenizedSession& s) {
  if (s.utterance_tokens.size() < 2) {
    throw UndefinedMetricError("self-BLEU needs at least two non-empty utterances");
  }
}

double mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

}  // namespace

TokenizedSession tokenize_session(const std::vector<std::string>& utterances) {
  TokenizedSession s;
  for (const auto& u : utterances) {
    auto tokens = text::tokenize(u);
    if (tokens.empty()) continue;
    s.all_tokens.insert(s.all_tokens.end(), tokens.begin(), tokens.end());
    s.utterance_tokens.push_back(std::move(tokens));
  }
  return s;
}

TokenizedSession tokenize_session(const SessionRecord& record) {
  std::vector<std::string> texts;
  texts.reserve(record.utterances.size());
  for (const auto& u : record.utterances) texts.push_back(u.text);
  return tokenize_session(texts);
}

double token_entropy(const TokenizedSession& s) {
  if (s.all_tokens.empty()) throw UndefinedMetricError("token entropy of an empty session");
  std::map<std::string, int> counts;
  for (const auto& t : s.all_tokens) ++counts[t];
  if (counts.size() == 1) return 0.0;
  const double n = static_cast<double>(s.all_tokens.size());
  double h = 0.0;
  for (const auto& [_, c] : counts) {
    const double p = c / n;
    h -= p * std::log2(p);
  }
  return h / std::log2(static_cast<double>(counts.size()));
}

double distinct2(const TokenizedSession& s) {
  std::set<std::pair<std::string, std::string>> unique;
  std::size_t total = 0;
  for (const auto& u : s.utterance_tokens) {
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      unique.emplace(u[i], u[i + 1]);
      ++total;
    }
  }
  if (total == 0) throw UndefinedMetricError("distinct-2 needs at least one bigram");
  return static_cast<double>(unique.size()) / static_cast<double>(total);
}

double sentence_bleu(const std::vector<std::string>& candidate,
                     const std::vector<const std::vector<std::string>*>& references) {
  if (candidate.empty() || references.empty()) {
    throw UndefinedMetricError("BLEU needs a non-empty candidate and at least one reference");
  }
  TokenizedSession s;
  s.utterance_tokens.push_back(candidate);
  for (const auto* r : references) s.utterance_tokens.push_back(*r);
  return bleu_from_counts(0, s, index(s));
}

double self_bleu_serial(const TokenizedSession& s) {
  require_pairs(s);
  const auto idx = index(s);
  std::vector<double> scores(s.utterance_tokens.size());
  for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = bleu_from_counts(i, s, idx);
  return mean(scores);
}

double self_bleu(const TokenizedSession& s) {
  require_pairs(s);
  const auto idx = index(s);
  const auto count = static_cast<std::ptrdiff_t>(s.utterance_tokens.size());
  std::vector<double> scores(s.utterance_tokens.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    scores[static_cast<std::size_t>(i)] = bleu_from_counts(static_cast<std::size_t>(i), s, idx);
  }
  return mean(scores);
}

}  // namespace miforge::lexmetrics
