#pragma once

#include <string>
#include <vector>

#include "govmine/normalize/normalizer.hpp"
#include "govmine/normalize/segmenter.hpp"

namespace govmine::norm {

struct Substitution {
  std::size_t start = 0;  // offset in the resolved text
  std::size_t end = 0;    // start + replacement length
  std::string original;   // the pronoun that was replaced
  std::string replacement;
};

struct PronounResolution {
  NormalizedDocument doc;
  std::vector<Substitution> log;
};

// Replaces sentence-initial they/them/it/"this group" with the nearest
// preceding role mention in the same section; unresolvable pronouns stay.
// Heading sentences are never rewritten. Block boundaries and sentence
// counts are preserved.
PronounResolution resolve_pronouns(
    const NormalizedDocument& doc, const std::vector<SentenceSpan>& sentences,
    const std::vector<std::string>& role_surfaces);

// Inverse of the substitution pass; returns the pre-resolution text.
std::string undo_substitutions(const std::string& resolved_text,
                               const std::vector<Substitution>& log);

}  // namespace govmine::norm
