#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace miforge::backend {

/// Validates `value` against a JSON Schema subset: type, enum, required,
/// properties, items, minItems, maxItems, minimum, maximum, minLength.
/// Returns the first violation, or nullopt when the value conforms.
std::optional<std::string> schema_violation(const nlohmann::json& schema,
                                            const nlohmann::json& value);

/// Lenient extraction of a JSON object from model output: the whole text,
/// else the first fenced block, else the outermost {...} span.
std::optional<nlohmann::json> extract_json(std::string_view text);

}  // namespace miforge::backend
