#pragma once

#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace miforge::strategy {

/// Maps a lowercase token to its lemma.
using Lemmatizer = std::function<std::string(const std::string&)>;

/// Plural and third-person -s only: -sses -> -ss, -ies -> -y, -s -> "".
/// Leaves -ed/-ing forms alone.
std::string strip_suffix(const std::string& token);

const std::set<std::string>& default_stop_words();

/// Plain text, one word per line; '#' starts a comment.
std::set<std::string> load_stop_words(const std::filesystem::path& path);

/// Lemmatized content tokens of a text, first occurrence order, no
/// duplicates.
class ContentAnalyzer {
 public:
  ContentAnalyzer();
  ContentAnalyzer(std::set<std::string> stop_words, Lemmatizer lemmatizer);

  std::vector<std::string> content_tokens(const std::string& text) const;

 private:
  std::set<std::string> stop_words_;
  Lemmatizer lemmatizer_;
};

}  // namespace miforge::strategy
