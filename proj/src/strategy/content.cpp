#include "miforge/strategy/content.h"

#include <algorithm>
#include <fstream>

#include "miforge/core/errors.h"
#include "miforge/core/text.h"

namespace miforge::strategy {

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool has_letter(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isalpha(c) != 0; });
}

}  // namespace

std::string strip_suffix(const std::string& token) {
  if (token.size() > 4 && ends_with(token, "sses")) return token.substr(0, token.size() - 2);
  if (token.size() > 4 && ends_with(token, "ies")) return token.substr(0, token.size() - 3) + "y";
  if (token.size() > 3 && ends_with(token, "s") && !ends_with(token, "ss") &&
      !ends_with(token, "us") && !ends_with(token, "is") && !ends_with(token, "'s")) {
    return token.substr(0, token.size() - 1);
  }
  if (ends_with(token, "'s")) return token.substr(0, token.size() - 2);
  return token;
}

const std::set<std::string>& default_stop_words() {
  static const std::set<std::string> kWords{
      "a", "about", "above", "after", "again", "against", "all", "also", "am", "an", "and", "any",
      "are", "aren't", "as", "at", "be", "because", "been", "before", "being", "below", "between",
      "both", "but", "by", "can", "can't", "cannot", "could", "couldn't", "did", "didn't", "do",
      "does", "doesn't", "doing", "don't", "down", "during", "each", "even", "few", "for", "from",
      "further", "get", "got", "had", "hadn't", "has", "hasn't", "have", "haven't", "having", "he",
      "her", "here", "hers", "herself", "him", "himself", "his", "how", "i", "i'd", "i'll", "i'm",
      "i've", "if", "in", "into", "is", "isn't", "it", "it's", "its", "itself", "just", "let's",
      "like", "me", "more", "most", "much", "my", "myself", "no", "nor", "not", "now", "of", "off",
      "on", "once", "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own",
      "really", "same", "she", "should", "so", "some", "such", "than", "that", "that's", "the",
      "their", "theirs", "them", "themselves", "then", "there", "there's", "these", "they",
      "they're", "this", "those", "through", "to", "too", "under", "until", "up", "very", "was",
      "wasn't", "we", "we're", "were", "weren't", "what", "what's", "when", "where", "which",
      "while", "who", "whom", "why", "will", "with", "won't", "would", "wouldn't", "yeah", "yes",
      "you", "you'd", "you'll", "you're", "you've", "your", "yours", "yourself", "yourselves",
      "okay", "ok", "oh", "um", "well"};
  return kWords;
}

std::set<std::string> load_stop_words(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open stop-word list " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto word = text::to_lower(text::trim(line));
    if (!word.empty()) out.insert(word);
  }
  return out;
}

ContentAnalyzer::ContentAnalyzer() : ContentAnalyzer(default_stop_words(), strip_suffix) {}

ContentAnalyzer::ContentAnalyzer(std::set<std::string> stop_words, Lemmatizer lemmatizer)
    : stop_words_(std::move(stop_words)), lemmatizer_(std::move(lemmatizer)) {}

std::vector<std::string> ContentAnalyzer::content_tokens(const std::string& text) const {
  std::vector<std::string> out;
  for (const auto& token : text::tokenize(text)) {
    if (!has_letter(token) || stop_words_.count(token)) continue;
    auto lemma = lemmatizer_(token);
    if (lemma.empty() || stop_words_.count(lemma)) continue;
    if (std::find(out.begin(), out.end(), lemma) == out.end()) out.push_back(std::move(lemma));
  }
  return out;
}

}  // namespace miforge::strategy
