#include "govmine/normalize/pronouns.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "govmine/common/text.hpp"

namespace govmine::norm {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
}

struct RawSub {
  std::size_t start = 0;  // pre-substitution normalized offsets
  std::size_t end = 0;
  std::string replacement;
};

// Rightmost role-surface occurrence within [begin, end), word-bounded.
struct Mention {
  std::size_t start = std::string::npos;
  std::size_t len = 0;
};

Mention last_mention(const std::string& lower_text, std::size_t begin,
                     std::size_t end,
                     const std::vector<std::string>& surfaces) {
  Mention best;
  for (const auto& surface : surfaces) {
    if (surface.empty() || surface.size() > end - begin) continue;
    std::size_t from = begin;
    for (;;) {
      std::size_t at = lower_text.find(surface, from);
      if (at == std::string::npos || at + surface.size() > end) break;
      bool left_ok = at == 0 || !is_word_char(lower_text[at - 1]);
      bool right_ok = at + surface.size() == lower_text.size() ||
                      !is_word_char(lower_text[at + surface.size()]);
      if (left_ok && right_ok) {
        if (best.start == std::string::npos || at > best.start ||
            (at == best.start && surface.size() > best.len)) {
          best.start = at;
          best.len = surface.size();
        }
      }
      from = at + 1;
    }
  }
  return best;
}

}  // namespace

PronounResolution resolve_pronouns(
    const NormalizedDocument& doc, const std::vector<SentenceSpan>& sentences,
    const std::vector<std::string>& role_surfaces) {
  const std::string& text = doc.text;
  const std::string lower = to_lower(text);

  std::vector<std::string> surfaces;
  surfaces.reserve(role_surfaces.size());
  for (const auto& s : role_surfaces) surfaces.push_back(to_lower(s));

  std::set<std::size_t> heading_starts;
  for (const auto& s : doc.sections) heading_starts.insert(s.start);
  auto section_of = [&](std::size_t pos) {
    int idx = -1;
    for (const auto& s : doc.sections) {
      if (s.start <= pos) ++idx;
      else break;
    }
    return idx;
  };

  std::vector<RawSub> subs;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const SentenceSpan& sent = sentences[i];
    if (heading_starts.count(sent.start)) continue;

    // sentence-initial token, list marker and punctuation skipped
    std::size_t p = sent.start;
    if (p + 1 < sent.end && text[p] == '-' && text[p + 1] == ' ') p += 2;
    while (p < sent.end &&
           !std::isalpha(static_cast<unsigned char>(text[p])) &&
           text[p] != '\n')
      ++p;
    std::size_t q = p;
    while (q < sent.end && std::isalpha(static_cast<unsigned char>(text[q])))
      ++q;
    if (q == p) continue;
    std::string word = lower.substr(p, q - p);

    std::size_t pron_end = q;
    bool is_pronoun = word == "they" || word == "them" || word == "it";
    if (!is_pronoun && word == "this") {
      std::size_t r = q;
      while (r < sent.end && text[r] == ' ') ++r;
      std::size_t r2 = r;
      while (r2 < sent.end &&
             std::isalpha(static_cast<unsigned char>(text[r2])))
        ++r2;
      if (lower.substr(r, r2 - r) == "group") {
        is_pronoun = true;
        pron_end = r2;
      }
    }
    if (!is_pronoun) continue;

    // nearest preceding mention in the same section
    int section = section_of(sent.start);
    Mention found;
    for (std::size_t j = i; j-- > 0;) {
      const SentenceSpan& prev = sentences[j];
      if (section_of(prev.start) != section) break;
      found = last_mention(lower, prev.start, prev.end, surfaces);
      if (found.start != std::string::npos) break;
    }
    if (found.start == std::string::npos) continue;

    subs.push_back({p, pron_end, text.substr(found.start, found.len)});
  }

  PronounResolution out;
  out.doc.repo_id = doc.repo_id;
  out.doc.commit_id = doc.commit_id;
  out.doc.offset_map = doc.offset_map;

  std::string resolved;
  resolved.reserve(text.size());
  std::size_t copied = 0;
  std::ptrdiff_t delta = 0;
  for (const RawSub& sub : subs) {
    resolved.append(text, copied, sub.start - copied);
    std::size_t final_start = resolved.size();
    resolved += sub.replacement;
    out.log.push_back({final_start, final_start + sub.replacement.size(),
                       text.substr(sub.start, sub.end - sub.start),
                       sub.replacement});
    out.doc.offset_map.splice(
        {static_cast<std::size_t>(static_cast<std::ptrdiff_t>(sub.start) +
                                  delta),
         static_cast<std::size_t>(static_cast<std::ptrdiff_t>(sub.end) +
                                  delta)},
        sub.replacement.size());
    delta += static_cast<std::ptrdiff_t>(sub.replacement.size()) -
             static_cast<std::ptrdiff_t>(sub.end - sub.start);
    copied = sub.end;
  }
  resolved.append(text, copied, std::string::npos);
  out.doc.text = std::move(resolved);

  out.doc.sections = doc.sections;
  for (auto& section : out.doc.sections) {
    std::ptrdiff_t shift = 0;
    for (const RawSub& sub : subs) {
      if (sub.end <= section.start)
        shift += static_cast<std::ptrdiff_t>(sub.replacement.size()) -
                 static_cast<std::ptrdiff_t>(sub.end - sub.start);
    }
    section.start = static_cast<std::size_t>(
        static_cast<std::ptrdiff_t>(section.start) + shift);
  }
  return out;
}

std::string undo_substitutions(const std::string& resolved_text,
                               const std::vector<Substitution>& log) {
  std::string text = resolved_text;
  for (auto it = log.rbegin(); it != log.rend(); ++it)
    text.replace(it->start, it->end - it->start, it->original);
  return text;
}

}  // namespace govmine::norm
