#include "govmine/normalize/segmenter.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "govmine/common/config_file.hpp"
#include "govmine/common/text.hpp"

namespace govmine::norm {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool is_list_line(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  return i + 1 < line.size() && line[i] == '-' && line[i + 1] == ' ';
}

struct Block {
  std::size_t start = 0;
  std::size_t end = 0;
};

// Closing punctuation that stays attached to the sentence end.
bool is_closer(char c) {
  return c == ')' || c == ']' || c == '"' || c == '\'' || c == '}';
}

}  // namespace

SegmenterOptions SegmenterOptions::from_config(
    std::string_view abbrev_config) {
  SegmenterOptions opts;
  for (const std::string& line : parse_config_lines(abbrev_config))
    opts.abbreviations.push_back(to_lower(line));
  return opts;
}

std::vector<SentenceSpan> segment(const NormalizedDocument& doc,
                                  const SegmenterOptions& options) {
  const std::string& text = doc.text;
  std::set<std::string> abbrev(options.abbreviations.begin(),
                               options.abbreviations.end());
  std::set<std::size_t> heading_starts;
  for (const auto& s : doc.sections) heading_starts.insert(s.start);

  // Rebuild block structure from lines: blank lines separate, list items and
  // headings stand alone.
  std::vector<Block> blocks;
  std::size_t line_start = 0;
  bool in_paragraph = false;
  auto close_paragraph = [&] { in_paragraph = false; };
  while (line_start < text.size()) {
    std::size_t nl = text.find('\n', line_start);
    std::size_t line_end = nl == std::string::npos ? text.size() : nl;
    std::string_view line(text.data() + line_start, line_end - line_start);
    bool blank = std::all_of(line.begin(), line.end(), is_space);
    if (blank) {
      close_paragraph();
    } else if (is_list_line(line) || heading_starts.count(line_start)) {
      blocks.push_back({line_start, line_end});
      close_paragraph();
    } else if (in_paragraph) {
      blocks.back().end = line_end;
    } else {
      blocks.push_back({line_start, line_end});
      in_paragraph = true;
    }
    if (nl == std::string::npos) break;
    line_start = nl + 1;
  }

  std::vector<SentenceSpan> sentences;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Block& block = blocks[b];
    std::size_t cursor = block.start;
    auto flush = [&](std::size_t from, std::size_t to) {
      while (from < to && is_space(text[from])) ++from;
      while (to > from && is_space(text[to - 1])) --to;
      if (from < to)
        sentences.push_back({from, to, static_cast<int>(b)});
    };
    for (std::size_t i = block.start; i < block.end; ++i) {
      char c = text[i];
      if (c != '.' && c != '!' && c != '?') continue;
      std::size_t end = i + 1;
      while (end < block.end && is_closer(text[end])) ++end;
      std::size_t next = end;
      while (next < block.end && is_space(text[next])) ++next;
      if (next == end) continue;  // no whitespace after: not a boundary
      if (next >= block.end) continue;  // block end flushes below anyway
      char nc = text[next];
      if (!(std::isupper(static_cast<unsigned char>(nc)) ||
            std::isdigit(static_cast<unsigned char>(nc))))
        continue;
      if (c == '.') {
        // token before the period, leading punctuation shed
        std::size_t ts = i;
        while (ts > block.start && !is_space(text[ts - 1])) --ts;
        std::string token = to_lower(text.substr(ts, i + 1 - ts));
        while (!token.empty() &&
               std::ispunct(static_cast<unsigned char>(token.front())) &&
               token.front() != '.')
          token.erase(token.begin());
        if (abbrev.count(token)) continue;
        // multi-dot runs (ellipsis) only split after the final dot
        if (i + 1 < block.end && text[i + 1] == '.') continue;
      }
      flush(cursor, end);
      cursor = next;
      i = end - 1;
    }
    flush(cursor, block.end);
  }
  return sentences;
}

}  // namespace govmine::norm
