#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace govmine {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Collapses internal whitespace runs to single spaces and trims the ends.
std::string collapse_ws(std::string_view s);

std::vector<std::string> split_lines(std::string_view text);

// Whitespace-separated tokens.
std::vector<std::string> split_ws(std::string_view s);

bool starts_with_ci(std::string_view s, std::string_view prefix);

// Glob match with `*` and `?`, case-insensitive. Any other character
// matches itself after case folding.
bool glob_match_ci(std::string_view pattern, std::string_view name);

// Lowercase singular form of a noun: -ies -> y, -xes/-ses/-shes/-ches -> drop
// es, -s -> drop, with an exception list for lexical singulars in -s.
std::string singularize(std::string_view word);

// Word tokens for the lexical encoder and cluster labels: lowercased maximal
// runs of alphanumerics.
std::vector<std::string> word_tokens(std::string_view s);

}  // namespace govmine
