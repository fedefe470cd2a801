#include "miforge/backend/json_schema.h"

#include "miforge/core/text.h"

namespace miforge::backend {

using nlohmann::json;

namespace {

bool type_matches(const std::string& type, const json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

std::optional<std::string> check(const json& schema, const json& value, const std::string& path) {
  const std::string where = path.empty() ? "$" : path;
  if (auto it = schema.find("type"); it != schema.end()) {
    if (!type_matches(it->get<std::string>(), value)) {
      return where + ": expected " + it->get<std::string>() + ", got " + value.type_name();
    }
  }
  if (auto it = schema.find("enum"); it != schema.end()) {
    bool found = false;
    for (const auto& option : *it) found = found || option == value;
    if (!found) return where + ": value " + value.dump() + " not in " + it->dump();
  }
  if (value.is_number()) {
    const double x = value.get<double>();
    if (auto it = schema.find("minimum"); it != schema.end() && x < it->get<double>()) {
      return where + ": " + value.dump() + " is below minimum " + it->dump();
    }
    if (auto it = schema.find("maximum"); it != schema.end() && x > it->get<double>()) {
      return where + ": " + value.dump() + " is above maximum " + it->dump();
    }
  }
  if (value.is_string()) {
    if (auto it = schema.find("minLength"); it != schema.end()) {
      if (text::trim(value.get<std::string>()).size() < it->get<std::size_t>()) {
        return where + ": string shorter than " + it->dump();
      }
    }
  }
  if (value.is_array()) {
    if (auto it = schema.find("minItems"); it != schema.end() && value.size() < it->get<std::size_t>()) {
      return where + ": expected at least " + it->dump() + " items, got " +
             std::to_string(value.size());
    }
    if (auto it = schema.find("maxItems"); it != schema.end() && value.size() > it->get<std::size_t>()) {
      return where + ": expected at most " + it->dump() + " items, got " +
             std::to_string(value.size());
    }
    if (auto it = schema.find("items"); it != schema.end()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (auto err = check(*it, value[i], where + "[" + std::to_string(i) + "]")) return err;
      }
    }
  }
  if (value.is_object()) {
    if (auto it = schema.find("required"); it != schema.end()) {
      for (const auto& key : *it) {
        if (!value.contains(key.get<std::string>())) {
          return where + ": missing required field '" + key.get<std::string>() + "'";
        }
      }
    }
    if (auto it = schema.find("properties"); it != schema.end()) {
      for (const auto& [key, sub] : it->items()) {
        if (auto field = value.find(key); field != value.end()) {
          if (auto err = check(sub, *field, where + "." + key)) return err;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<json> try_parse(std::string_view s) {
  auto parsed = json::parse(s.begin(), s.end(), nullptr, false);
  if (parsed.is_discarded()) return std::nullopt;
  return parsed;
}

}  // namespace

std::optional<std::string> schema_violation(const json& schema, const json& value) {
  return check(schema, value, "");
}

std::optional<json> extract_json(std::string_view raw) {
  const std::string_view body = text::trim(raw);
  if (auto whole = try_parse(body)) return whole;

  if (auto fence = body.find("```"); fence != std::string_view::npos) {
    auto start = body.find('\n', fence);
    auto end = start == std::string_view::npos ? start : body.find("```", start);
    if (start != std::string_view::npos && end != std::string_view::npos) {
      if (auto fenced = try_parse(body.substr(start + 1, end - start - 1))) return fenced;
    }
  }

  auto open = body.find('{');
  auto close = body.rfind('}');
  if (open != std::string_view::npos && close != std::string_view::npos && close > open) {
    if (auto span = try_parse(body.substr(open, close - open + 1))) return span;
  }
  return std::nullopt;
}

}  // namespace miforge::backend
