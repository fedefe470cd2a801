#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "miforge/core/errors.h"

namespace miforge::pipeline {

/// One parsed line and where it came from.
struct JsonLine {
  int line = 0;
  nlohmann::json value;
};

/// Blank lines are skipped. Throws ValidationError("path:line: ...") on
/// malformed JSON and when the file cannot be opened.
std::vector<JsonLine> read_json_lines(const std::filesystem::path& path);

/// Writes through a temporary file and renames it into place. Keys are
/// emitted in sorted order so equal records give equal bytes.
void write_json_lines(const std::filesystem::path& path, const std::vector<nlohmann::json>& lines);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& value);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Parses every line as T and runs `check` on it; any failure is rethrown
/// as ValidationError with the line number attached.
template <typename T, typename Check>
std::vector<T> read_records(const std::filesystem::path& path, Check check) {
  std::vector<T> out;
  for (auto& [line, value] : read_json_lines(path)) {
    try {
      T record = value.template get<T>();
      check(record);
      out.push_back(std::move(record));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    } catch (const Error& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace miforge::pipeline
