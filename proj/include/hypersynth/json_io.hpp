#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace hypersynth {

// Reads and parses a JSON file; throws ParseError on I/O or syntax errors.
nlohmann::json read_json_file(const std::string& path);
// Pretty-printed with a trailing newline.
void write_json_file(const std::string& path, const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& text);

[[noreturn]] void throw_missing(const char* key);
[[noreturn]] void throw_bad_type(const char* key, const char* detail);

// Typed field access that reports the offending key as a ParseError.
template <typename T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw_missing(key);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw_bad_type(key, e.what());
  }
}


} // namespace hypersynth
