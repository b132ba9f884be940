#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace govmine::ig {

enum class Deontic {
  kMay,
  kCan,
  kShould,
  kMust,
  kWill,
  kShall,
  kShouldNot,
  kMustNot,
  kCannot,
  kWillNot,
  kNone,
};
inline constexpr std::size_t kDeonticCount = 11;

const char* deontic_name(Deontic d);                       // "MUST_NOT"
std::optional<Deontic> deontic_from_name(std::string_view name);
std::string deontic_surface(Deontic d);  // "must not"; NONE -> ""

enum class Polarity { kEnabling, kRestricting, kNone };
const char* polarity_name(Polarity p);

// Modal surface -> deontic type, case-insensitive, whitespace collapsed.
class DeonticMap {
 public:
  static DeonticMap from_config(std::string_view content);
  Deontic canonicalize(std::string_view modal) const;
  bool knows(std::string_view modal) const;
  const std::map<std::string, Deontic>& entries() const { return map_; }

 private:
  std::map<std::string, Deontic> map_;
};

// Total deontic -> polarity table.
class PolarityTable {
 public:
  static PolarityTable from_config(std::string_view content);
  Polarity recode(Deontic d) const;

 private:
  std::array<Polarity, kDeonticCount> table_{};
};

// Surface variant -> canonical role name (lowercase singular).
class RoleLexicon {
 public:
  static RoleLexicon from_config(std::string_view content);
  std::optional<std::string> lookup(std::string_view surface) const;
  bool contains_canonical(std::string_view name) const;
  // Every variant surface, for mention matching.
  std::vector<std::string> surfaces() const;

 private:
  std::map<std::string, std::string> variants_;
  std::set<std::string> canonicals_;
};

// canonical name when known, else lowercased singularized surface;
// bool flags an uncontrolled (out-of-lexicon) role.
std::pair<std::string, bool> normalize_role(std::string_view surface,
                                            const RoleLexicon& lexicon);

// Verb lemma -> typology label; unmapped lemmas take the null label.
class ActionTypology {
 public:
  static ActionTypology from_config(std::string_view content);
  const std::string& null_label() const { return null_label_; }
  std::string classify(std::string_view lemma) const;
  std::vector<std::string> labels() const;  // ordered, null label last

 private:
  std::map<std::string, std::string> verb_to_label_;
  std::string null_label_ = "null";
};

// Lemmas recognized as main-verb candidates in modal-less sentences.
class VerbLexicon {
 public:
  static VerbLexicon from_config(std::string_view content);
  bool contains(std::string_view lemma) const;
  // Lemma for a surface token; `known` reports a lexicon hit.
  std::string lemma_of(std::string_view token, bool* known = nullptr) const;

 private:
  std::set<std::string> lemmas_;
};

Deontic canonicalize_deontic(std::string_view modal, const DeonticMap& map);
Polarity recode_polarity(Deontic d, const PolarityTable& table);
std::string classify_action(std::string_view lemma,
                            const ActionTypology& typology);

}  // namespace govmine::ig
