#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace govmine::norm {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  std::size_t size() const { return end - start; }
  bool empty() const { return end <= start; }
  bool operator==(const Span&) const = default;
};

// Maps normalized-text offsets back to the original markup and forward
// again. Verbatim runs are byte-identical copies; runs produced by synthesis
// (list markers, table separators, pronoun substitutions) carry an anchor
// into the original but no identity guarantee.
class OffsetMap {
 public:
  struct Run {
    std::size_t norm_start = 0;
    std::size_t norm_len = 0;
    std::size_t orig_start = 0;
    std::size_t orig_len = 0;
    bool verbatim = false;
  };

  void append(const Run& run);
  const std::vector<Run>& runs() const { return runs_; }

  // Smallest original span covering every verbatim char inside `normalized`;
  // for spans with no verbatim content, an empty span anchored at the
  // nearest original position.
  Span to_original(Span normalized) const;
  Span to_normalized(Span original) const;

  // Shrinks a normalized span to its verbatim-copied core (identity
  // round-trips are guaranteed on such spans).
  Span verbatim_core(Span normalized) const;

  // Replaces normalized span [at.start, at.end) with `replacement_len`
  // synthesized chars anchored at the span's original image. Used by
  // pronoun substitution.
  void splice(Span at, std::size_t replacement_len);

 private:
  std::vector<Run> runs_;
};

struct SectionInfo {
  std::string text;  // heading text, markup stripped
  int depth = 1;
  std::size_t start = 0;  // offset of the heading text in normalized text
};

struct NormalizedDocument {
  std::string repo_id;
  std::string commit_id;
  std::string text;
  std::vector<SectionInfo> sections;
  OffsetMap offset_map;
};

struct NormalizerOptions {
  std::vector<std::string> badge_hosts;
  std::vector<std::string> badge_alt_markers;  // substring match, folded

  static NormalizerOptions from_config(std::string_view badge_config);
};

// Markup -> plain text: images and badge links dropped, tables turned into
// `- cell: cell; cell` list items, headings recorded then flattened,
// emphasis/links reduced to visible text. Malformed markup degrades to
// literal text. The transform is a fixed point: normalizing its own output
// changes nothing.
NormalizedDocument normalize(std::string_view raw_text,
                             const NormalizerOptions& options = {});

int count_sections(const NormalizedDocument& doc);

}  // namespace govmine::norm
