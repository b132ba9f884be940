#include "govmine/common/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace govmine {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }
char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](char c) { return lower(c); });
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool in_ws = true;  // swallow leading whitespace
  for (char c : s) {
    if (is_space(c)) {
      in_ws = true;
    } else {
      if (in_ws && !out.empty()) out += ' ';
      out += c;
      in_ws = false;
    }
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string_view line = text.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.emplace_back(line);
      start = i + 1;
    }
  }
  if (!text.empty() && text.back() == '\n') lines.pop_back();
  return lines;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (lower(s[i]) != lower(prefix[i])) return false;
  return true;
}

bool glob_match_ci(std::string_view pattern, std::string_view name) {
  // Iterative wildcard match with backtracking on the last `*`.
  std::size_t p = 0, n = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (n < name.size()) {
    if (p < pattern.size() &&
        (pattern[p] == '?' || lower(pattern[p]) == lower(name[n]))) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = n;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      n = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::string singularize(std::string_view word) {
  static const std::array<std::string_view, 8> keep_as_is = {
      "status", "basis", "consensus", "emeritus",
      "news",   "ethos", "process",   "access"};
  std::string w = to_lower(word);
  for (auto k : keep_as_is)
    if (w == k) return w;
  auto ends = [&](std::string_view suf) {
    return w.size() >= suf.size() &&
           w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (w.size() > 3 && ends("ies")) {
    w.replace(w.size() - 3, 3, "y");
    return w;
  }
  if (w.size() > 3 && ends("es")) {
    // Strip -es only when the stem takes it: pass/box/quiz/patch/push.
    std::string stem = w.substr(0, w.size() - 2);
    auto stem_ends = [&](std::string_view suf) {
      return stem.size() >= suf.size() &&
             stem.compare(stem.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (stem_ends("ss") || stem_ends("x") || stem_ends("z") ||
        stem_ends("ch") || stem_ends("sh")) {
      return stem;
    }
  }
  if (w.size() > 1 && ends("s") && !ends("ss") && !ends("us")) w.pop_back();
  return w;
}

std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += lower(c);
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace govmine
