#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace miforge::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

/// Lowercases, splits on whitespace and strips leading/trailing ASCII
/// punctuation from each piece. Pieces that end up empty are dropped.
std::vector<std::string> tokenize(std::string_view s);

/// Splits on '\n', dropping a trailing '\r'.
std::vector<std::string> split_lines(std::string_view s);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view s, std::uint64_t seed = 14695981039346656037ULL);
std::string hex64(std::uint64_t value);

}  // namespace miforge::text
