#include "govmine/common/config_file.hpp"

#include <fstream>
#include <sstream>

#include "govmine/common/error.hpp"
#include "govmine/common/text.hpp"

namespace govmine {

std::vector<std::string> parse_config_lines(std::string_view content) {
  std::vector<std::string> out;
  for (const std::string& raw : split_lines(content)) {
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (!line.empty()) out.push_back(std::move(line));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_config_pairs(
    std::string_view content, std::string_view what) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& line : parse_config_lines(content)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ConfigError(std::string(what) + ": expected TAB-separated line: " +
                        line);
    out.emplace_back(trim(line.substr(0, tab)), trim(line.substr(tab + 1)));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ConfigError("short write: " + path);
}

}  // namespace govmine
