#include "govmine/ig/lexicons.hpp"

#include <algorithm>

#include "govmine/common/config_file.hpp"
#include "govmine/common/error.hpp"
#include "govmine/common/text.hpp"

namespace govmine::ig {

namespace {

constexpr std::array<const char*, kDeonticCount> kDeonticNames = {
    "MAY",        "CAN",      "SHOULD", "MUST",     "WILL", "SHALL",
    "SHOULD_NOT", "MUST_NOT", "CANNOT", "WILL_NOT", "NONE"};

const std::vector<std::string>& determiners() {
  static const std::vector<std::string> kDeterminers = {
      "the", "a",     "an",    "all",  "any", "each", "every", "this",
      "that", "these", "those", "its", "their", "our", "such"};
  return kDeterminers;
}

}  // namespace

const char* deontic_name(Deontic d) {
  return kDeonticNames[static_cast<std::size_t>(d)];
}

std::optional<Deontic> deontic_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kDeonticCount; ++i)
    if (name == kDeonticNames[i]) return static_cast<Deontic>(i);
  return std::nullopt;
}

std::string deontic_surface(Deontic d) {
  if (d == Deontic::kNone) return "";
  std::string s = to_lower(deontic_name(d));
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

const char* polarity_name(Polarity p) {
  switch (p) {
    case Polarity::kEnabling: return "ENABLING";
    case Polarity::kRestricting: return "RESTRICTING";
    case Polarity::kNone: return "NONE";
  }
  return "NONE";
}

DeonticMap DeonticMap::from_config(std::string_view content) {
  DeonticMap m;
  for (const auto& [surface, name] : parse_config_pairs(content, "deontics")) {
    auto d = deontic_from_name(name);
    if (!d) throw ConfigError("deontics: unknown type " + name);
    m.map_[to_lower(collapse_ws(surface))] = *d;
  }
  return m;
}

Deontic DeonticMap::canonicalize(std::string_view modal) const {
  std::string key = to_lower(collapse_ws(modal));
  if (key.empty()) return Deontic::kNone;
  auto it = map_.find(key);
  return it == map_.end() ? Deontic::kNone : it->second;
}

bool DeonticMap::knows(std::string_view modal) const {
  return map_.count(to_lower(collapse_ws(modal))) > 0;
}

PolarityTable PolarityTable::from_config(std::string_view content) {
  PolarityTable t;
  std::array<bool, kDeonticCount> seen{};
  for (const auto& [name, pol] : parse_config_pairs(content, "polarity")) {
    auto d = deontic_from_name(name);
    if (!d) throw ConfigError("polarity: unknown deontic " + name);
    Polarity p;
    if (pol == "ENABLING") p = Polarity::kEnabling;
    else if (pol == "RESTRICTING") p = Polarity::kRestricting;
    else if (pol == "NONE") p = Polarity::kNone;
    else throw ConfigError("polarity: unknown polarity " + pol);
    t.table_[static_cast<std::size_t>(*d)] = p;
    seen[static_cast<std::size_t>(*d)] = true;
  }
  for (std::size_t i = 0; i < kDeonticCount; ++i) {
    if (!seen[i])
      throw ConfigError(std::string("polarity: table not total, missing ") +
                        kDeonticNames[i]);
  }
  return t;
}

Polarity PolarityTable::recode(Deontic d) const {
  return table_[static_cast<std::size_t>(d)];
}

RoleLexicon RoleLexicon::from_config(std::string_view content) {
  RoleLexicon lex;
  for (const auto& [variant, canon] : parse_config_pairs(content, "roles")) {
    lex.variants_[to_lower(collapse_ws(variant))] = canon;
    lex.canonicals_.insert(canon);
  }
  return lex;
}

std::optional<std::string> RoleLexicon::lookup(
    std::string_view surface) const {
  auto it = variants_.find(to_lower(collapse_ws(surface)));
  if (it == variants_.end()) return std::nullopt;
  return it->second;
}

bool RoleLexicon::contains_canonical(std::string_view name) const {
  return canonicals_.count(std::string(name)) > 0;
}

std::vector<std::string> RoleLexicon::surfaces() const {
  std::vector<std::string> out;
  out.reserve(variants_.size());
  for (const auto& [variant, canon] : variants_) out.push_back(variant);
  return out;
}

std::pair<std::string, bool> normalize_role(std::string_view surface,
                                            const RoleLexicon& lexicon) {
  std::string cleaned = to_lower(collapse_ws(surface));
  // shed leading determiners
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& det : determiners()) {
      if (cleaned.size() > det.size() + 1 &&
          cleaned.compare(0, det.size(), det) == 0 &&
          cleaned[det.size()] == ' ') {
        cleaned.erase(0, det.size() + 1);
        changed = true;
        break;
      }
    }
  }
  if (auto canon = lexicon.lookup(cleaned)) return {*canon, false};
  // uncontrolled: lowercase, last word singularized
  auto sp = cleaned.rfind(' ');
  std::string head =
      sp == std::string::npos ? cleaned : cleaned.substr(sp + 1);
  std::string rest = sp == std::string::npos ? "" : cleaned.substr(0, sp + 1);
  return {rest + singularize(head), true};
}

ActionTypology ActionTypology::from_config(std::string_view content) {
  ActionTypology t;
  for (const auto& [verb, label] : parse_config_pairs(content, "typology")) {
    auto [it, inserted] = t.verb_to_label_.emplace(to_lower(verb), label);
    if (!inserted)
      throw ConfigError("typology: duplicate verb " + verb);
  }
  return t;
}

std::string ActionTypology::classify(std::string_view lemma) const {
  auto it = verb_to_label_.find(to_lower(lemma));
  return it == verb_to_label_.end() ? null_label_ : it->second;
}

std::vector<std::string> ActionTypology::labels() const {
  std::set<std::string> uniq;
  for (const auto& [verb, label] : verb_to_label_) uniq.insert(label);
  std::vector<std::string> out(uniq.begin(), uniq.end());
  out.push_back(null_label_);
  return out;
}

VerbLexicon VerbLexicon::from_config(std::string_view content) {
  VerbLexicon v;
  for (const std::string& line : parse_config_lines(content))
    v.lemmas_.insert(to_lower(line));
  return v;
}

bool VerbLexicon::contains(std::string_view lemma) const {
  return lemmas_.count(to_lower(lemma)) > 0;
}

std::string VerbLexicon::lemma_of(std::string_view token,
                                  bool* known) const {
  static const std::map<std::string, std::string> kIrregular = {
      {"is", "be"},    {"are", "be"},   {"was", "be"},   {"were", "be"},
      {"been", "be"},  {"being", "be"}, {"has", "have"}, {"had", "have"},
      {"does", "do"},  {"did", "do"},   {"goes", "go"},  {"went", "go"},
      {"chose", "choose"}, {"chosen", "choose"}, {"led", "lead"},
      {"met", "meet"}, {"held", "hold"}, {"paid", "pay"}};
  std::string w = to_lower(token);
  if (auto it = kIrregular.find(w); it != kIrregular.end()) {
    if (known) *known = lemmas_.count(it->second) > 0;
    return it->second;
  }

  auto accept = [&](const std::string& cand) {
    return lemmas_.count(cand) > 0;
  };
  std::vector<std::string> candidates;
  candidates.push_back(w);
  auto ends = [&](std::string_view suf) {
    return w.size() > suf.size() &&
           w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends("ies")) candidates.push_back(w.substr(0, w.size() - 3) + "y");
  if (ends("ied")) candidates.push_back(w.substr(0, w.size() - 3) + "y");
  if (ends("es")) candidates.push_back(w.substr(0, w.size() - 2));
  if (ends("s") && !ends("ss")) candidates.push_back(w.substr(0, w.size() - 1));
  if (ends("ed") && w.size() > 3) {
    std::string stem = w.substr(0, w.size() - 2);
    candidates.push_back(stem);
    candidates.push_back(stem + "e");
    if (stem.size() > 2 && stem[stem.size() - 1] == stem[stem.size() - 2])
      candidates.push_back(stem.substr(0, stem.size() - 1));
  }
  if (ends("ing") && w.size() > 4) {
    std::string stem = w.substr(0, w.size() - 3);
    candidates.push_back(stem);
    candidates.push_back(stem + "e");
    if (stem.size() > 2 && stem[stem.size() - 1] == stem[stem.size() - 2])
      candidates.push_back(stem.substr(0, stem.size() - 1));
  }
  for (const auto& cand : candidates) {
    if (accept(cand)) {
      if (known) *known = true;
      return cand;
    }
  }
  if (known) *known = false;
  // fall back to plain inflection stripping
  if (ends("ies")) return w.substr(0, w.size() - 3) + "y";
  if (ends("s") && !ends("ss") && !ends("us")) {
    std::string stem = w.substr(0, w.size() - 1);
    if (stem.size() > 1 && stem.back() == 'e') {
      std::string shorter = stem.substr(0, stem.size() - 1);
      if ((shorter.size() >= 2 &&
           (shorter.compare(shorter.size() - 2, 2, "ss") == 0 ||
            shorter.compare(shorter.size() - 2, 2, "ch") == 0 ||
            shorter.compare(shorter.size() - 2, 2, "sh") == 0)) ||
          (!shorter.empty() &&
           (shorter.back() == 'x' || shorter.back() == 'z')))
        return shorter;
    }
    return stem;
  }
  return w;
}

Deontic canonicalize_deontic(std::string_view modal, const DeonticMap& map) {
  return map.canonicalize(modal);
}

Polarity recode_polarity(Deontic d, const PolarityTable& table) {
  return table.recode(d);
}

std::string classify_action(std::string_view lemma,
                            const ActionTypology& typology) {
  return typology.classify(lemma);
}

}  // namespace govmine::ig
