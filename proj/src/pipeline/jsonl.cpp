#include "miforge/pipeline/jsonl.h"

#include <fstream>

namespace miforge::pipeline {

using nlohmann::json;

std::vector<JsonLine> read_json_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("missing input " + path.string());
  std::vector<JsonLine> out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back({line, json::parse(text)});
    } catch (const json::parse_error& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

namespace {

void replace_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << bytes;
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void write_json_lines(const std::filesystem::path& path, const std::vector<json>& lines) {
  std::string bytes;
  for (const auto& j : lines) {
    bytes += j.dump();
    bytes += '\n';
  }
  replace_file(path, bytes);
}

void write_json_file(const std::filesystem::path& path, const json& value) {
  replace_file(path, value.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  replace_file(path, text);
}

}  // namespace miforge::pipeline
