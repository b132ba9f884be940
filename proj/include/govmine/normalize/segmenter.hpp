#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "govmine/normalize/normalizer.hpp"

namespace govmine::norm {

struct SentenceSpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive; trimmed to non-whitespace boundaries
  int block_id = 0;
};

struct SegmenterOptions {
  // Tokens ending in '.' that never close a sentence, case-insensitive.
  std::vector<std::string> abbreviations;

  static SegmenterOptions from_config(std::string_view abbrev_config);
};

// Blocks: each list item its own block, headings their own block, runs of
// plain lines one paragraph block. Prose splits at sentence-final
// punctuation followed by whitespace and a capital or digit. Together the
// spans cover every non-whitespace character exactly once.
std::vector<SentenceSpan> segment(const NormalizedDocument& doc,
                                  const SegmenterOptions& options = {});

}  // namespace govmine::norm
