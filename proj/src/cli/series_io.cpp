#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

#include "trimcusum/cli.hpp"
#include "trimcusum/errors.hpp"

namespace trimcusum::cli {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_header(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower == "value";
}

}  // namespace

Sample parse_series(std::istream& in) {
  Sample out;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view field = strip(line);
    if (field.empty()) continue;
    if (!seen_content) {
      seen_content = true;
      if (is_header(field)) continue;
    }
    // from_chars rejects a leading '+', which CSV writers do emit.
    const std::string_view digits = field.front() == '+' ? field.substr(1) : field;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw DataError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) +
                          "' as a number",
                      line_no);
    }
    if (!std::isfinite(value)) {
      throw DataError("line " + std::to_string(line_no) + ": non-finite value", line_no);
    }
    out.push_back(value);
  }
  if (out.size() < 4) {
    throw DataError("series too short: need at least 4 values, got " + std::to_string(out.size()));
  }
  return out;
}

Sample load_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file '" + path.string() + "'");
  return parse_series(in);
}

}  // namespace trimcusum::cli
