#include "miforge/backend/stub_embedder.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "miforge/core/errors.h"
#include "miforge/core/text.h"

namespace miforge::backend {

StubEmbedder::StubEmbedder(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ < 2) throw ValidationError("stub embedder dimension must be >= 2");
}

std::size_t StubEmbedder::bucket(const std::string& token) const {
  return text::fnv1a(token) % dimension_;
}

void StubEmbedder::add_synonym(const std::string& a, const std::string& b, double cosine) {
  if (!(cosine > -1.0 && cosine < 1.0)) throw ValidationError("synonym cosine must be in (-1, 1)");
  if (a == b) return;
  const auto& [anchor, partner] = a < b ? std::pair{a, b} : std::pair{b, a};
  if (bucket(anchor) == bucket(partner)) {
    throw ValidationError("synonym tokens '" + a + "' and '" + b + "' share a hash bucket");
  }
  rotated_[partner] = {anchor, cosine};
}

void StubEmbedder::load_synonyms(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open synonym table " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::istringstream fields{std::string(body)};
    std::string a, b;
    double c = kDefaultSynonymCosine;
    fields >> a >> b;
    if (b.empty()) throw ValidationError("synonym line needs two words: " + line);
    if (!(fields >> c)) c = kDefaultSynonymCosine;
    add_synonym(text::to_lower(a), text::to_lower(b), c);
  }
}

EmbeddingVector StubEmbedder::embed_token(const std::string& token) const {
  EmbeddingVector v;
  v.values.assign(dimension_, 0.0);
  if (auto it = rotated_.find(token); it != rotated_.end()) {
    const auto& [anchor, c] = it->second;
    v.values[bucket(anchor)] += c;
    v.values[bucket(token)] += std::sqrt(1.0 - c * c);
  } else {
    v.values[bucket(token)] = 1.0;
  }
  return v;
}

EmbeddingVector StubEmbedder::embed_text(const std::string& input) const {
  EmbeddingVector sum;
  sum.values.assign(dimension_, 0.0);
  for (const auto& token : text::tokenize(input)) {
    const auto v = embed_token(token);
    for (std::size_t i = 0; i < dimension_; ++i) sum.values[i] += v.values[i];
  }
  return sum;
}

std::vector<EmbeddingVector> StubEmbedder::embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed_text(t));
  return out;
}

}  // namespace miforge::backend
