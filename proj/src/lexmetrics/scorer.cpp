#include "miforge/lexmetrics/scorer.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "miforge/core/errors.h"
#include "miforge/core/text.h"

namespace miforge::lexmetrics {

namespace {

constexpr const char* kBos = "<s>";
constexpr const char* kUnk = "<unk>";

std::string key2(const std::string& u, const std::string& v) { return u + '\x1f' + v; }
std::string key3(const std::string& u, const std::string& v, const std::string& w) {
  return u + '\x1f' + v + '\x1f' + w;
}

}  // namespace

void TrigramScorer::fit(const std::vector<std::string>& lines) {
  vocabulary_.clear();
  context_counts_.clear();
  trigram_counts_.clear();
  std::size_t tokens_seen = 0;
  for (const auto& line : lines) {
    const auto tokens = text::tokenize(line);
    std::string u = kBos, v = kBos;
    for (const auto& w : tokens) {
      ++vocabulary_[w];
      ++context_counts_[key2(u, v)];
      ++trigram_counts_[key3(u, v, w)];
      u = v;
      v = w;
      ++tokens_seen;
    }
  }
  if (tokens_seen == 0) throw ValidationError("reference corpus has no tokens");
  vocabulary_.emplace(kUnk, 0);
  fitted_ = true;
}

void TrigramScorer::fit_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open reference corpus " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  fit(text::split_lines(buf.str()));
}

std::string TrigramScorer::map_token(const std::string& t) const {
  if (t == kBos) return t;
  return vocabulary_.count(t) ? t : std::string(kUnk);
}

double TrigramScorer::probability(const std::string& u, const std::string& v,
                                  const std::string& w) const {
  if (!fitted_) throw ValidationError("trigram scorer used before fit");
  const std::string mu = map_token(u), mv = map_token(v), mw = map_token(w);
  auto ctx = context_counts_.find(key2(mu, mv));
  auto tri = trigram_counts_.find(key3(mu, mv, mw));
  const double c_ctx = ctx == context_counts_.end() ? 0.0 : ctx->second;
  const double c_tri = tri == trigram_counts_.end() ? 0.0 : tri->second;
  return (c_tri + 1.0) / (c_ctx + static_cast<double>(vocabulary_.size()));
}

double TrigramScorer::log_prob(std::span<const std::string> history,
                               const std::string& token) const {
  const std::size_t n = history.size();
  const std::string u = n >= 2 ? history[n - 2] : std::string(kBos);
  const std::string v = n >= 1 ? history[n - 1] : std::string(kBos);
  return std::log(probability(u, v, token));
}

UniformScorer::UniformScorer(std::size_t vocabulary_size) {
  if (vocabulary_size == 0) throw ValidationError("uniform scorer needs a non-empty vocabulary");
  log_p_ = -std::log(static_cast<double>(vocabulary_size));
}

double UniformScorer::log_prob(std::span<const std::string>, const std::string&) const {
  return log_p_;
}

double perplexity(const TokenizedSession& s, const Scorer& scorer) {
  if (!scorer.ready()) throw ValidationError("perplexity scorer is not fitted");
  if (s.all_tokens.empty()) throw UndefinedMetricError("perplexity of an empty session");
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& u : s.utterance_tokens) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      total += scorer.log_prob(std::span<const std::string>(u.data(), i), u[i]);
      ++n;
    }
  }
  return std::exp(-total / static_cast<double>(n));
}

}  // namespace miforge::lexmetrics
