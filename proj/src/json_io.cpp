#include "hypersynth/json_io.hpp"

#include <fstream>
#include <sstream>

#include "hypersynth/errors.hpp"

namespace hypersynth {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void throw_missing(const char* key) { throw ParseError(std::string("missing field '") + key + "'"); }

void throw_bad_type(const char* key, const char* detail) {
  throw ParseError(std::string("field '") + key + "': " + detail);
}

} // namespace hypersynth
