#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace govmine {

// Plain-text config conventions shared by every config file: one entry per
// line, `#` starts a comment, blank lines ignored.

// Lines as-is (trimmed).
std::vector<std::string> parse_config_lines(std::string_view content);

// TAB-separated key/value lines. Lines without a TAB raise ConfigError.
std::vector<std::pair<std::string, std::string>> parse_config_pairs(
    std::string_view content, std::string_view what);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace govmine
