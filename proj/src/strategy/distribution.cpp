#include "miforge/strategy/distribution.h"

#include <cmath>

#include "miforge/core/errors.h"

namespace miforge::strategy {

std::string_view to_string(Coarse c) {
  switch (c) {
    case Coarse::reflection: return "reflection";
    case Coarse::question: return "question";
    case Coarse::input: return "input";
    case Coarse::other: return "other";
  }
  return "other";
}

Coarse coarse_of(const MICode& code) {
  if (code.side() != Side::therapist) {
    throw ValidationError("client code " + code.to_string() + " has no therapist category");
  }
  switch (code.category()) {
    case Category::reflection: return Coarse::reflection;
    case Category::question: return Coarse::question;
    case Category::input: return Coarse::input;
    default: return Coarse::other;
  }
}

long CodeCounts::total() const {
  long t = 0;
  for (long c : counts) t += c;
  return t;
}

void CodeCounts::add(Coarse c, long n) {
  if (n < 0) throw ValidationError("negative code count");
  counts[static_cast<std::size_t>(c)] += n;
}

CodeCounts CodeCounts::from_session(const SessionRecord& record) {
  CodeCounts out;
  for (std::size_t i = 1; i < record.utterances.size(); ++i) {
    const auto& u = record.utterances[i];
    if (u.speaker == Speaker::therapist) out.add(coarse_of(u.code));
  }
  return out;
}

double code_entropy(const CodeCounts& counts) {
  const long n = counts.total();
  if (n <= 0) throw UndefinedMetricError("code entropy of an empty code sequence");
  double h = 0.0;
  int observed = 0;
  for (long c : counts.counts) {
    if (c == 0) continue;
    ++observed;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  if (observed == 1) return 0.0;
  return h / std::log2(static_cast<double>(observed));
}

double distribution_adherence(const std::array<double, kCoarseCount>& observed) {
  double sum = 0.0;
  for (double p : observed) {
    if (p < 0.0 || !std::isfinite(p)) throw ValidationError("observed distribution out of range");
    sum += p + kSmoothingEpsilon;
  }
  double kl = 0.0;
  for (std::size_t c = 0; c < kCoarseCount; ++c) {
    const double p = (observed[c] + kSmoothingEpsilon) / sum;
    kl += p * std::log(p / kIdealDistribution[c]);
  }
  return std::exp(-kl);
}

double strategy_adherence(const CodeCounts& counts) {
  const long n = counts.total();
  if (n <= 0) throw UndefinedMetricError("strategy adherence of an empty code sequence");
  std::array<double, kCoarseCount> p{};
  for (std::size_t c = 0; c < kCoarseCount; ++c) {
    p[c] = static_cast<double>(counts.counts[c]) / static_cast<double>(n);
  }
  return distribution_adherence(p);
}

double reflection_question_ratio(const CodeCounts& counts) {
  const long q = counts[Coarse::question];
  if (q == 0) throw UndefinedMetricError("reflection/question ratio undefined without questions");
  return static_cast<double>(counts[Coarse::reflection]) / static_cast<double>(q);
}

}  // namespace miforge::strategy
