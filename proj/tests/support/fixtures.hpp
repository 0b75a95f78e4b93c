#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtures {

inline std::string dir() { return CHANNELDANCE_FIXTURES_DIR; }

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

inline std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.push_back("");
  return fields;
}

inline uint64_t parse_word(const std::string& s) {
  return std::stoull(s, nullptr, 0);
}

inline std::vector<uint8_t> parse_hex(const std::string& s) {
  if (s.size() % 2 != 0) throw std::runtime_error("odd hex string");
  std::vector<uint8_t> bytes;
  for (size_t i = 0; i < s.size(); i += 2)
    bytes.push_back(static_cast<uint8_t>(std::stoul(s.substr(i, 2), nullptr, 16)));
  return bytes;
}

}  // namespace fixtures
