#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "miforge/lexmetrics/lexmetrics.h"

namespace miforge::lexmetrics {

/// Conditional token log-probabilities (natural log).
class Scorer {
 public:
  virtual ~Scorer() = default;
  /// `history` holds the tokens preceding `token` in the same utterance.
  virtual double log_prob(std::span<const std::string> history, const std::string& token) const = 0;
  virtual bool ready() const { return true; }
};

/// Laplace-smoothed word trigram. Each line is padded with two <s> markers;
/// tokens unseen in training map to <unk>, which is part of the vocabulary.
class TrigramScorer : public Scorer {
 public:
  void fit(const std::vector<std::string>& lines);
  /// Plain text, one utterance per line.
  void fit_file(const std::filesystem::path& path);

  double log_prob(std::span<const std::string> history, const std::string& token) const override;
  bool ready() const override { return fitted_; }

  double probability(const std::string& u, const std::string& v, const std::string& w) const;
  std::size_t vocabulary_size() const { return vocabulary_.size(); }

 private:
  std::string map_token(const std::string& t) const;

  bool fitted_ = false;
  std::map<std::string, int> vocabulary_;
  std::map<std::string, int> context_counts_;
  std::map<std::string, int> trigram_counts_;
};

/// p = 1/|V| for every token.
class UniformScorer : public Scorer {
 public:
  explicit UniformScorer(std::size_t vocabulary_size);
  double log_prob(std::span<const std::string>, const std::string&) const override;

 private:
  double log_p_;
};

/// p = 1 for every token.
class CertainScorer : public Scorer {
 public:
  double log_prob(std::span<const std::string>, const std::string&) const override { return 0.0; }
};

/// exp of the negative mean token log-probability; history resets at each
/// utterance.
double perplexity(const TokenizedSession& s, const Scorer& scorer);

}  // namespace miforge::lexmetrics
