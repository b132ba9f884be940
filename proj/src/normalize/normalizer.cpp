#include "govmine/normalize/normalizer.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "govmine/common/config_file.hpp"
#include "govmine/common/text.hpp"

namespace govmine::norm {

namespace {

constexpr std::ptrdiff_t kSynth = -1;

// A text fragment whose every character remembers its original offset
// (or kSynth for synthesized characters).
struct Frag {
  std::string s;
  std::vector<std::ptrdiff_t> m;

  void push(char c, std::ptrdiff_t src) {
    s += c;
    m.push_back(src);
  }
  void append_view(std::string_view v, std::size_t orig_base) {
    for (std::size_t i = 0; i < v.size(); ++i)
      push(v[i], static_cast<std::ptrdiff_t>(orig_base + i));
  }
  void append_synth(std::string_view v) {
    for (char c : v) push(c, kSynth);
  }
  void append(const Frag& other) {
    s += other.s;
    m.insert(m.end(), other.m.begin(), other.m.end());
  }
  void erase(std::size_t pos, std::size_t len) {
    s.erase(pos, len);
    m.erase(m.begin() + static_cast<std::ptrdiff_t>(pos),
            m.begin() + static_cast<std::ptrdiff_t>(pos + len));
  }
  Frag slice(std::size_t pos, std::size_t len) const {
    Frag out;
    out.s = s.substr(pos, len);
    out.m.assign(m.begin() + static_cast<std::ptrdiff_t>(pos),
                 m.begin() + static_cast<std::ptrdiff_t>(std::min(
                                 pos + len, m.size())));
    return out;
  }
  bool blank() const {
    return std::all_of(s.begin(), s.end(), [](char c) {
      return std::isspace(static_cast<unsigned char>(c));
    });
  }
  void trim_ends() {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    if (e < s.size()) erase(e, s.size() - e);
    if (b > 0) erase(0, b);
  }
};

bool is_ws(char c) { return c == ' ' || c == '\t'; }

std::string url_host(std::string_view url) {
  std::size_t at = url.find("://");
  std::size_t start;
  if (at != std::string_view::npos) {
    start = at + 3;
  } else if (url.substr(0, 2) == "//") {
    start = 2;
  } else {
    return "";
  }
  std::size_t end = url.find_first_of("/?#", start);
  return to_lower(url.substr(start, end == std::string_view::npos
                                        ? std::string_view::npos
                                        : end - start));
}

// ---- inline transforms ---------------------------------------------------

// Backtick code spans: delimiters dropped, content kept and processed like
// any other text so the result is a fixed point under re-normalization.
void strip_code_spans(Frag& f) {
  std::size_t i = 0;
  while (i < f.s.size()) {
    if (f.s[i] != '`') {
      ++i;
      continue;
    }
    std::size_t run = 1;
    while (i + run < f.s.size() && f.s[i + run] == '`') ++run;
    // find a closing run of the same length
    std::size_t j = i + run;
    std::size_t close = std::string::npos;
    while (j < f.s.size()) {
      if (f.s[j] == '`') {
        std::size_t r = 1;
        while (j + r < f.s.size() && f.s[j + r] == '`') ++r;
        if (r == run) {
          close = j;
          break;
        }
        j += r;
      } else {
        ++j;
      }
    }
    if (close == std::string::npos) {
      i += run;  // unmatched: literal
    } else {
      f.erase(close, run);
      f.erase(i, run);
      // continue scanning at former content start
    }
  }
}

struct BadgeConfig {
  const std::vector<std::string>* hosts = nullptr;
  const std::vector<std::string>* alt_markers = nullptr;

  bool badge_url(std::string_view url) const {
    if (!hosts) return false;
    std::string host = url_host(url);
    if (host.empty()) return false;
    for (const auto& h : *hosts)
      if (host == h) return true;
    return false;
  }
  bool badge_text(std::string_view text) const {
    if (!alt_markers) return false;
    std::string folded = to_lower(text);
    for (const auto& a : *alt_markers)
      if (!a.empty() && folded.find(a) != std::string::npos) return true;
    return false;
  }
};

// Finds the matching close bracket, counting nesting; npos when unbalanced.
std::size_t match_bracket(const std::string& s, std::size_t open, char oc,
                          char cc) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == oc) ++depth;
    if (s[i] == cc && --depth == 0) return i;
  }
  return std::string::npos;
}

// `![alt](url)` and `![alt][ref]` removed outright.
void strip_images(Frag& f) {
  std::size_t i = 0;
  while (i + 1 < f.s.size()) {
    if (f.s[i] != '!' || f.s[i + 1] != '[') {
      ++i;
      continue;
    }
    std::size_t rb = match_bracket(f.s, i + 1, '[', ']');
    if (rb == std::string::npos) {
      ++i;
      continue;
    }
    std::size_t tail = rb + 1;
    if (tail < f.s.size() && (f.s[tail] == '(' || f.s[tail] == '[')) {
      char oc = f.s[tail], cc = oc == '(' ? ')' : ']';
      std::size_t close = match_bracket(f.s, tail, oc, cc);
      if (close != std::string::npos) {
        f.erase(i, close - i + 1);
        continue;
      }
    }
    f.erase(i, rb - i + 1);  // bare `![alt]`
  }
}

// `[text](url)` -> text; badge-host or badge-alt links dropped entirely;
// `[text][ref]` -> text; empty text links vanish.
void strip_links(Frag& f, const BadgeConfig& badges) {
  std::size_t i = 0;
  while (i < f.s.size()) {
    if (f.s[i] != '[') {
      ++i;
      continue;
    }
    std::size_t rb = match_bracket(f.s, i, '[', ']');
    if (rb == std::string::npos) {
      ++i;
      continue;
    }
    std::size_t text_len = rb - i - 1;
    std::string text = f.s.substr(i + 1, text_len);
    std::size_t tail = rb + 1;
    std::size_t close = std::string::npos;
    std::string url;
    if (tail < f.s.size() && f.s[tail] == '(') {
      close = match_bracket(f.s, tail, '(', ')');
      if (close != std::string::npos) url = f.s.substr(tail + 1, close - tail - 1);
    } else if (tail < f.s.size() && f.s[tail] == '[') {
      close = match_bracket(f.s, tail, '[', ']');
    }
    if (close == std::string::npos) {
      ++i;  // plain bracketed text, keep literal
      continue;
    }
    // strip title from `(url "title")`
    if (auto sp = url.find_first_of(" \t"); sp != std::string::npos)
      url.erase(sp);
    bool drop_all = trim(text).empty() || badges.badge_url(url) ||
                    badges.badge_text(text);
    if (drop_all) {
      f.erase(i, close - i + 1);
    } else {
      f.erase(rb, close - rb + 1);
      f.erase(i, 1);
      // rescan text content for nested constructs
    }
  }
}

// `<https://...>` keeps the url text; other tags and comments are dropped;
// a stray `<` stays literal.
void strip_html(Frag& f) {
  std::size_t i = 0;
  while (i < f.s.size()) {
    if (f.s[i] != '<') {
      ++i;
      continue;
    }
    if (f.s.compare(i, 4, "<!--") == 0) {
      std::size_t end = f.s.find("-->", i + 4);
      if (end == std::string::npos) {
        ++i;
        continue;
      }
      f.erase(i, end + 3 - i);
      continue;
    }
    std::size_t close = f.s.find('>', i + 1);
    if (close == std::string::npos) {
      ++i;
      continue;
    }
    std::string inner = f.s.substr(i + 1, close - i - 1);
    bool autolink = inner.find("://") != std::string::npos ||
                    inner.rfind("mailto:", 0) == 0;
    bool tagish = !inner.empty() &&
                  (std::isalpha(static_cast<unsigned char>(inner[0])) ||
                   inner[0] == '/' || inner[0] == '!');
    if (autolink && inner.find(' ') == std::string::npos) {
      f.erase(close, 1);
      f.erase(i, 1);
      i += inner.size();
    } else if (tagish) {
      f.erase(i, close - i + 1);
    } else {
      ++i;
    }
  }
}

// Matched emphasis delimiters stripped, unmatched ones left literal.
void strip_emphasis_delim(Frag& f, std::string_view delim,
                          bool word_boundary) {
  const std::size_t n = delim.size();
  std::size_t i = 0;
  auto alnum = [&](std::size_t pos) {
    return pos < f.s.size() &&
           std::isalnum(static_cast<unsigned char>(f.s[pos]));
  };
  while (i + n <= f.s.size()) {
    if (f.s.compare(i, n, delim) != 0) {
      ++i;
      continue;
    }
    bool opener = i + n < f.s.size() && !is_ws(f.s[i + n]) &&
                  f.s.compare(i + n, n, delim) != 0;
    if (word_boundary && i > 0 && alnum(i - 1)) opener = false;
    if (!opener) {
      i += n;
      continue;
    }
    std::size_t j = i + n;
    std::size_t close = std::string::npos;
    while (j + n <= f.s.size()) {
      if (f.s.compare(j, n, delim) == 0 && !is_ws(f.s[j - 1])) {
        if (!word_boundary || !alnum(j + n)) {
          close = j;
          break;
        }
      }
      ++j;
    }
    if (close == std::string::npos) {
      i += n;
    } else {
      f.erase(close, n);
      f.erase(i, n);
    }
  }
}

void strip_emphasis(Frag& f) {
  strip_emphasis_delim(f, "**", false);
  strip_emphasis_delim(f, "__", true);
  strip_emphasis_delim(f, "~~", false);
  strip_emphasis_delim(f, "*", false);
  strip_emphasis_delim(f, "_", true);
}

Frag inline_process(std::string_view text, std::size_t orig_base,
                    const BadgeConfig& badges) {
  Frag f;
  f.append_view(text, orig_base);
  strip_code_spans(f);
  strip_images(f);
  strip_links(f, badges);
  strip_html(f);
  strip_emphasis(f);
  f.trim_ends();  // removals can leave edge whitespace behind
  return f;
}

// ---- line classification --------------------------------------------------

struct RawLine {
  std::string_view text;   // without newline
  std::size_t start = 0;   // offset into the original
};

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
}

bool is_fence(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_ws(s[i])) ++i;
  char c = i < s.size() ? s[i] : '\0';
  if (c != '`' && c != '~') return false;
  std::size_t run = 0;
  while (i + run < s.size() && s[i + run] == c) ++run;
  return run >= 3;
}

bool is_hrule(std::string_view s) {
  std::size_t i = 0, symbols = 0;
  char sym = '\0';
  while (i < s.size()) {
    char c = s[i++];
    if (is_ws(c)) continue;
    if (c != '-' && c != '*' && c != '_') return false;
    if (sym == '\0') sym = c;
    if (c != sym) return false;
    ++symbols;
  }
  return symbols >= 3;
}

bool is_reference_def(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_ws(s[i])) ++i;
  if (i >= s.size() || s[i] != '[') return false;
  std::size_t rb = s.find(']', i);
  if (rb == std::string_view::npos || rb + 1 >= s.size()) return false;
  if (s[rb + 1] != ':') return false;
  return !trim(s.substr(rb + 2)).empty();
}

bool is_table_separator(std::string_view s) {
  bool dash = false, pipe = false;
  for (char c : s) {
    if (c == '-') dash = true;
    else if (c == '|') pipe = true;
    else if (c != ':' && !is_ws(c)) return false;
  }
  return dash && pipe;
}

struct HeadingParse {
  int depth = 0;
  std::size_t content_offset = 0;  // within the line
  std::string_view content;
};

std::optional<HeadingParse> parse_heading(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_ws(s[i])) ++i;
  if (i > 3) return std::nullopt;  // indented code, not a heading
  std::size_t hashes = 0;
  while (i + hashes < s.size() && s[i + hashes] == '#') ++hashes;
  if (hashes < 1 || hashes > 6) return std::nullopt;
  std::size_t c = i + hashes;
  if (c < s.size() && !is_ws(s[c])) return std::nullopt;
  while (c < s.size() && is_ws(s[c])) ++c;
  std::string_view content = s.substr(c);
  // closing hash sequence
  std::size_t e = content.size();
  while (e > 0 && is_ws(content[e - 1])) --e;
  std::size_t h = e;
  while (h > 0 && content[h - 1] == '#') --h;
  if (h < e && (h == 0 || is_ws(content[h - 1]))) e = h;
  while (e > 0 && is_ws(content[e - 1])) --e;
  HeadingParse out;
  out.depth = static_cast<int>(hashes);
  out.content_offset = c;
  out.content = content.substr(0, e);
  return out;
}

struct ListItemParse {
  std::size_t indent = 0;          // chars of leading whitespace
  std::size_t content_offset = 0;  // within the line
};

std::optional<ListItemParse> parse_list_item(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_ws(s[i])) ++i;
  if (i >= s.size()) return std::nullopt;
  std::size_t marker_end = 0;
  if (s[i] == '-' || s[i] == '*' || s[i] == '+') {
    marker_end = i + 1;
  } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])) &&
           j - i < 9)
      ++j;
    if (j < s.size() && (s[j] == '.' || s[j] == ')'))
      marker_end = j + 1;
    else
      return std::nullopt;
  } else {
    return std::nullopt;
  }
  if (marker_end >= s.size() || !is_ws(s[marker_end])) return std::nullopt;
  std::size_t c = marker_end;
  while (c < s.size() && is_ws(s[c])) ++c;
  if (c >= s.size()) return std::nullopt;  // bare marker
  return ListItemParse{i, c};
}

enum class LineKind { kParagraph, kListItem, kHeading };

struct OutLine {
  Frag frag;
  LineKind kind = LineKind::kParagraph;
  bool blank_before = false;
  int heading_depth = 0;
};

}  // namespace

// ---- OffsetMap -------------------------------------------------------------

void OffsetMap::append(const Run& run) {
  if (run.norm_len == 0 && run.orig_len == 0) return;
  if (!runs_.empty()) {
    Run& last = runs_.back();
    bool contiguous = last.norm_start + last.norm_len == run.norm_start;
    if (last.verbatim && run.verbatim && contiguous &&
        last.orig_start + last.orig_len == run.orig_start) {
      last.norm_len += run.norm_len;
      last.orig_len += run.orig_len;
      return;
    }
    if (!last.verbatim && !run.verbatim && contiguous &&
        last.orig_len == 0 && run.orig_len == 0) {
      last.norm_len += run.norm_len;
      return;
    }
  }
  runs_.push_back(run);
}

Span OffsetMap::to_original(Span normalized) const {
  std::size_t lo = std::string::npos, hi = 0, anchor = 0;
  for (const Run& r : runs_) {
    if (r.norm_start + r.norm_len <= normalized.start) {
      if (r.orig_len > 0) anchor = r.orig_start + r.orig_len;
      continue;
    }
    if (r.norm_start >= normalized.end) break;
    std::size_t s = std::max(normalized.start, r.norm_start);
    std::size_t e = std::min(normalized.end, r.norm_start + r.norm_len);
    if (s >= e) continue;
    if (r.verbatim) {
      std::size_t os = r.orig_start + (s - r.norm_start);
      std::size_t oe = r.orig_start + (e - r.norm_start);
      lo = std::min(lo, os);
      hi = std::max(hi, oe);
    } else if (r.orig_len > 0) {
      lo = std::min(lo, r.orig_start);
      hi = std::max(hi, r.orig_start + r.orig_len);
    }
  }
  if (lo == std::string::npos) return {anchor, anchor};
  return {lo, hi};
}

Span OffsetMap::to_normalized(Span original) const {
  std::size_t lo = std::string::npos, hi = 0, anchor = 0;
  for (const Run& r : runs_) {
    if (r.orig_len == 0) continue;  // synthesized, no original image
    if (r.orig_start + r.orig_len <= original.start) {
      anchor = r.norm_start + r.norm_len;
      continue;
    }
    if (r.orig_start >= original.end) break;
    std::size_t s = std::max(original.start, r.orig_start);
    std::size_t e = std::min(original.end, r.orig_start + r.orig_len);
    if (s >= e) continue;
    if (r.verbatim) {
      std::size_t ns = r.norm_start + (s - r.orig_start);
      std::size_t ne = r.norm_start + (e - r.orig_start);
      lo = std::min(lo, ns);
      hi = std::max(hi, ne);
    } else {
      lo = std::min(lo, r.norm_start);
      hi = std::max(hi, r.norm_start + r.norm_len);
    }
  }
  if (lo == std::string::npos) return {anchor, anchor};
  return {lo, hi};
}

Span OffsetMap::verbatim_core(Span normalized) const {
  std::size_t lo = std::string::npos, hi = 0;
  for (const Run& r : runs_) {
    if (!r.verbatim) continue;
    std::size_t s = std::max(normalized.start, r.norm_start);
    std::size_t e = std::min(normalized.end, r.norm_start + r.norm_len);
    if (s >= e) continue;
    lo = std::min(lo, s);
    hi = std::max(hi, e);
  }
  if (lo == std::string::npos) return {normalized.start, normalized.start};
  return {lo, hi};
}

void OffsetMap::splice(Span at, std::size_t replacement_len) {
  Span orig = to_original(at);
  std::vector<Run> updated;
  const std::ptrdiff_t delta = static_cast<std::ptrdiff_t>(replacement_len) -
                               static_cast<std::ptrdiff_t>(at.size());
  bool inserted = false;
  for (const Run& r : runs_) {
    std::size_t r_end = r.norm_start + r.norm_len;
    if (r_end <= at.start) {
      updated.push_back(r);
      continue;
    }
    if (r.norm_start >= at.end) {
      if (!inserted) {
        if (replacement_len > 0)
          updated.push_back({at.start, replacement_len, orig.start,
                             orig.size(), false});
        inserted = true;
      }
      Run shifted = r;
      shifted.norm_start =
          static_cast<std::size_t>(static_cast<std::ptrdiff_t>(r.norm_start) +
                                   delta);
      updated.push_back(shifted);
      continue;
    }
    // overlapping run: keep the parts outside the spliced span
    if (r.norm_start < at.start) {
      Run head = r;
      head.norm_len = at.start - r.norm_start;
      if (r.verbatim) head.orig_len = head.norm_len;
      updated.push_back(head);
    }
    if (!inserted) {
      if (replacement_len > 0)
        updated.push_back(
            {at.start, replacement_len, orig.start, orig.size(), false});
      inserted = true;
    }
    if (r_end > at.end) {
      Run tail = r;
      std::size_t cut = at.end - r.norm_start;
      tail.norm_start =
          static_cast<std::size_t>(static_cast<std::ptrdiff_t>(at.end) + delta);
      tail.norm_len = r.norm_len - cut;
      if (r.verbatim) {
        tail.orig_start = r.orig_start + cut;
        tail.orig_len = tail.norm_len;
      }
      updated.push_back(tail);
    }
  }
  if (!inserted && replacement_len > 0)
    updated.push_back({at.start, replacement_len, orig.start, orig.size(),
                       false});
  runs_ = std::move(updated);
}

// ---- normalize -------------------------------------------------------------

NormalizerOptions NormalizerOptions::from_config(
    std::string_view badge_config) {
  NormalizerOptions opts;
  for (const std::string& line : parse_config_lines(badge_config)) {
    if (starts_with_ci(line, "alt:"))
      opts.badge_alt_markers.push_back(to_lower(trim(line.substr(4))));
    else
      opts.badge_hosts.push_back(to_lower(line));
  }
  return opts;
}

NormalizedDocument normalize(std::string_view raw_text,
                             const NormalizerOptions& options) {
  BadgeConfig badges{&options.badge_hosts, &options.badge_alt_markers};

  // Split into lines, keeping original offsets; \r\n handled by excluding
  // the \r from the content view.
  std::vector<RawLine> lines;
  std::size_t pos = 0;
  while (pos <= raw_text.size()) {
    if (pos == raw_text.size()) {
      if (!raw_text.empty() && raw_text.back() != '\n') break;
      if (raw_text.empty()) break;
      break;
    }
    std::size_t nl = raw_text.find('\n', pos);
    std::size_t end = nl == std::string_view::npos ? raw_text.size() : nl;
    std::size_t content_end = end;
    if (content_end > pos && raw_text[content_end - 1] == '\r') --content_end;
    lines.push_back({raw_text.substr(pos, content_end - pos), pos});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  std::vector<OutLine> out_lines;
  bool pending_blank = false;

  auto emit = [&](Frag frag, LineKind kind, int depth = 0) {
    OutLine line;
    line.frag = std::move(frag);
    line.kind = kind;
    line.heading_depth = depth;
    line.blank_before = pending_blank || kind == LineKind::kHeading ||
                        out_lines.empty();
    pending_blank = false;
    out_lines.push_back(std::move(line));
  };

  std::size_t i = 0;
  while (i < lines.size()) {
    const RawLine& line = lines[i];
    std::string_view text = line.text;

    if (is_blank(text)) {
      pending_blank = true;
      ++i;
      continue;
    }
    if (is_fence(text) || is_hrule(text) || is_reference_def(text)) {
      ++i;
      continue;
    }

    // table: a pipe row followed by a separator row
    if (text.find('|') != std::string_view::npos && i + 1 < lines.size() &&
        is_table_separator(lines[i + 1].text) &&
        !is_table_separator(text)) {
      std::size_t row = i + 2;
      std::vector<std::size_t> data_rows;
      while (row < lines.size() && !is_blank(lines[row].text) &&
             lines[row].text.find('|') != std::string_view::npos) {
        data_rows.push_back(row);
        ++row;
      }
      for (std::size_t r : data_rows) {
        std::string_view rt = lines[r].text;
        // split on pipes; boundary pipes produce empty edge cells
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        std::size_t cell_start = 0;
        for (std::size_t k = 0; k <= rt.size(); ++k) {
          if (k == rt.size() || rt[k] == '|') {
            cells.emplace_back(cell_start, k);
            cell_start = k + 1;
          }
        }
        auto cell_empty = [&](std::size_t ci) {
          return trim(rt.substr(cells[ci].first,
                                cells[ci].second - cells[ci].first))
              .empty();
        };
        std::size_t first = 0, last = cells.size();
        if (!cells.empty() && cell_empty(0)) ++first;
        if (last > first && cell_empty(last - 1)) --last;
        if (first >= last) continue;
        Frag item;
        item.append_synth("- ");
        bool first_cell = true;
        for (std::size_t ci = first; ci < last; ++ci) {
          std::string_view cell =
              rt.substr(cells[ci].first, cells[ci].second - cells[ci].first);
          std::size_t lead = 0;
          while (lead < cell.size() && is_ws(cell[lead])) ++lead;
          std::size_t tail = cell.size();
          while (tail > lead && is_ws(cell[tail - 1])) --tail;
          Frag cf = inline_process(cell.substr(lead, tail - lead),
                                   lines[r].start + cells[ci].first + lead,
                                   badges);
          if (!first_cell) item.append_synth(ci == first + 1 ? ": " : "; ");
          item.append(cf);
          first_cell = false;
        }
        if (!item.blank()) emit(std::move(item), LineKind::kListItem);
      }
      i = row;
      continue;
    }

    if (auto heading = parse_heading(text)) {
      std::string_view content = heading->content;
      std::size_t off = heading->content_offset;
      // guard against emitted heading text re-parsing as a heading
      for (;;) {
        std::string_view probe = content;
        std::size_t hashes = 0;
        while (hashes < probe.size() && probe[hashes] == '#') ++hashes;
        if (hashes >= 1 && hashes <= 6 && hashes < probe.size() &&
            is_ws(probe[hashes])) {
          std::size_t c = hashes;
          while (c < probe.size() && is_ws(probe[c])) ++c;
          content = probe.substr(c);
          off += c;
        } else {
          break;
        }
      }
      Frag frag = inline_process(content, line.start + off, badges);
      if (!frag.blank()) emit(std::move(frag), LineKind::kHeading,
                              heading->depth);
      ++i;
      continue;
    }

    if (auto item = parse_list_item(text)) {
      Frag frag;
      frag.append_view(text.substr(0, item->indent), line.start);
      frag.append_synth("- ");
      Frag content = inline_process(text.substr(item->content_offset),
                                    line.start + item->content_offset,
                                    badges);
      frag.append(content);
      if (!content.blank()) emit(std::move(frag), LineKind::kListItem);
      ++i;
      continue;
    }

    // paragraph line; indented lines straight under a list item fold into it
    std::size_t indent = 0;
    while (indent < text.size() && is_ws(text[indent])) ++indent;
    Frag frag =
        inline_process(text.substr(indent), line.start + indent, badges);
    if (frag.blank()) {
      ++i;  // line emptied by image/html removal: drop it entirely
      continue;
    }
    if (!pending_blank && indent >= 2 && !out_lines.empty() &&
        out_lines.back().kind == LineKind::kListItem) {
      out_lines.back().frag.append_synth(" ");
      out_lines.back().frag.append(frag);
      ++i;
      continue;
    }
    emit(std::move(frag), LineKind::kParagraph);
    ++i;
  }

  // assemble document text, offset runs and section records
  NormalizedDocument doc;
  auto& text_out = doc.text;
  auto append_frag = [&](const Frag& f) {
    for (std::size_t k = 0; k < f.s.size(); ++k) {
      std::size_t at = text_out.size();
      text_out += f.s[k];
      if (f.m[k] == kSynth) {
        doc.offset_map.append({at, 1, 0, 0, false});
      } else {
        doc.offset_map.append(
            {at, 1, static_cast<std::size_t>(f.m[k]), 1, true});
      }
    }
  };
  for (std::size_t k = 0; k < out_lines.size(); ++k) {
    const OutLine& line = out_lines[k];
    if (k > 0) {
      text_out += '\n';
      doc.offset_map.append({text_out.size() - 1, 1, 0, 0, false});
      if (line.blank_before) {
        text_out += '\n';
        doc.offset_map.append({text_out.size() - 1, 1, 0, 0, false});
      }
    }
    if (line.kind == LineKind::kHeading) {
      doc.sections.push_back(
          {line.frag.s, line.heading_depth, text_out.size()});
    }
    append_frag(line.frag);
  }
  if (!text_out.empty()) {
    text_out += '\n';
    doc.offset_map.append({text_out.size() - 1, 1, 0, 0, false});
  }
  return doc;
}

int count_sections(const NormalizedDocument& doc) {
  return static_cast<int>(doc.sections.size());
}

}  // namespace govmine::norm
