#include "miforge/stats/ratings.h"

#include <fstream>
#include <map>

#include "miforge/core/errors.h"
#include "miforge/core/text.h"

namespace miforge::stats {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::string(text::trim(field)));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(std::string(text::trim(field)));
  return out;
}

std::vector<HumanRating> read_ratings_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open ratings file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty ratings file");
  std::map<std::string, std::size_t> column;
  const auto header = split_csv_line(line);
  for (std::size_t i = 0; i < header.size(); ++i) column[text::to_lower(header[i])] = i;

  auto need = [&](const std::string& name) {
    auto it = column.find(name);
    if (it == column.end()) throw ValidationError(path.string() + ": missing column " + name);
    return it->second;
  };
  const auto id_col = need("session_id");
  std::array<std::size_t, judge::kDimensionCount> dim_cols{};
  for (std::size_t d = 0; d < judge::kDimensionCount; ++d) {
    dim_cols[d] = need(std::string(judge::kDimensions[d]));
  }
  const bool has_annotator = column.count("annotator") > 0;
  std::string fallback = path.stem().string();
  if (auto us = fallback.rfind('_'); us != std::string::npos) fallback = fallback.substr(us + 1);

  std::vector<HumanRating> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    auto at = [&](std::size_t i) -> const std::string& {
      if (i >= fields.size()) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": too few fields");
      }
      return fields[i];
    };
    HumanRating r;
    r.session_id = at(id_col);
    r.annotator = has_annotator ? at(column["annotator"]) : fallback;
    for (std::size_t d = 0; d < judge::kDimensionCount; ++d) {
      const auto& f = at(dim_cols[d]);
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(f, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != f.size() || f.empty() || v < judge::kMinScore || v > judge::kMaxScore) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": bad " +
                              std::string(judge::kDimensions[d]) + " score '" + f + "'");
      }
      r.scores[d] = v;
    }
    if (r.session_id.empty()) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": empty session_id");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace miforge::stats
