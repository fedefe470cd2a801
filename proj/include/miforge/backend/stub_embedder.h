#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>

#include "miforge/backend/provider.h"

namespace miforge::backend {

/// Deterministic offline embedder.
///
/// Every token gets a one-hot direction in a hash-bucketed space. A
/// synonym entry (a, b, c) rotates b towards a so that cos(a, b) = c. A text
/// embeds as the sum of its token vectors, so single-token texts embed as
/// the token itself.
class StubEmbedder : public EmbeddingProvider {
 public:
  static constexpr double kDefaultSynonymCosine = 0.9;

  explicit StubEmbedder(std::size_t dimension = 8192);

  void add_synonym(const std::string& a, const std::string& b,
                   double cosine = kDefaultSynonymCosine);
  /// Plain text, one "word word [cosine]" entry per line; '#' comments.
  void load_synonyms(const std::filesystem::path& path);

  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

  EmbeddingVector embed_token(const std::string& token) const;
  EmbeddingVector embed_text(const std::string& text) const;

  std::size_t dimension() const { return dimension_; }
  std::size_t bucket(const std::string& token) const;

 private:
  std::size_t dimension_;
  // partner token -> (anchor token, cosine)
  std::map<std::string, std::pair<std::string, double>> rotated_;
};

}  // namespace miforge::backend
