#include "govmine/ig/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "govmine/common/text.hpp"
#include "govmine/default_configs.hpp"

namespace govmine::ig {

namespace {

struct Token {
  std::string_view raw;
  std::size_t core_start = 0;
  std::size_t core_end = 0;
  std::string lower;          // lowercased core
  bool clause_break = false;  // comma/semicolon/colon follows the core
};

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)); }

std::vector<Token> tokenize(std::string_view sentence) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() &&
           std::isspace(static_cast<unsigned char>(sentence[i])))
      ++i;
    std::size_t j = i;
    while (j < sentence.size() &&
           !std::isspace(static_cast<unsigned char>(sentence[j])))
      ++j;
    if (j == i) break;
    std::size_t cs = i, ce = j;
    auto is_punct = [&](char c) {
      return std::ispunct(static_cast<unsigned char>(c)) && c != '-' &&
             c != '\'';
    };
    while (cs < ce && is_punct(sentence[cs])) ++cs;
    while (ce > cs && (is_punct(sentence[ce - 1]) || sentence[ce - 1] == '-'))
      --ce;
    if (ce > cs) {
      Token t;
      t.raw = sentence.substr(i, j - i);
      t.core_start = cs;
      t.core_end = ce;
      t.lower = to_lower(sentence.substr(cs, ce - cs));
      for (std::size_t k = ce; k < j; ++k) {
        char c = sentence[k];
        if (c == ',' || c == ';' || c == ':') t.clause_break = true;
      }
      tokens.push_back(std::move(t));
    } else if (!tokens.empty()) {
      for (std::size_t k = i; k < j; ++k) {
        char c = sentence[k];
        if (c == ',' || c == ';' || c == ':') tokens.back().clause_break = true;
      }
    }
    i = j;
  }
  return tokens;
}

const std::set<std::string>& determiner_words() {
  static const std::set<std::string> kSet = {
      "the", "a",     "an",    "all",  "any",   "each", "every", "this",
      "that", "these", "those", "its", "their", "our",  "such"};
  return kSet;
}

const std::set<std::string>& preposition_words() {
  static const std::set<std::string> kSet = {
      "to",      "for",     "with",    "on",      "in",      "at",
      "by",      "from",    "of",      "about",   "into",    "onto",
      "over",    "under",   "within",  "without", "during",  "after",
      "before",  "upon",    "per",     "via",     "through", "against",
      "toward",  "towards", "across",  "among",   "between", "as",
      "that",    "whether", "if",      "when",    "where",   "how",
      "who",     "which",   "because", "so",      "while",   "unless",
      "until"};
  return kSet;
}

const std::set<std::string>& agent_nouns() {
  static const std::set<std::string> kSet = {
      "committee", "team",      "board",      "council",   "group",
      "community", "organization", "foundation", "member", "person",
      "people",    "lead",      "leader",     "chair",     "body",
      "panel",     "staff",     "maintainer", "contributor", "committer",
      "reviewer",  "developer", "user",       "owner",     "author",
      "manager",   "administrator", "moderator", "admin",  "steward",
      "mentor",    "participant", "individual", "party",   "dictator",
      "officer",   "director",  "president",  "secretary", "treasurer",
      "bdfl",      "tsc"};
  return kSet;
}

const std::set<std::string>& agent_suffix_blocklist() {
  static const std::set<std::string> kSet = {
      "number", "order", "matter", "manner", "error",  "later",
      "letter", "water", "other",  "another", "paper", "further"};
  return kSet;
}

bool is_adverbish(const std::string& w) {
  static const std::set<std::string> kSet = {"also", "then",  "still",
                                             "only", "first", "immediately",
                                             "always", "promptly"};
  if (kSet.count(w)) return true;
  return w.size() > 3 && w.compare(w.size() - 2, 2, "ly") == 0;
}

struct ModalMatch {
  std::size_t first = 0;  // token indexes, inclusive
  std::size_t last = 0;
  Deontic deontic = Deontic::kNone;
};

// Longest modal phrase starting at token `i` (two tokens, then one);
// "never" counts as "not" for the lookup.
std::optional<ModalMatch> modal_at(const std::vector<Token>& tokens,
                                   std::size_t i, const DeonticMap& map) {
  if (i >= tokens.size()) return std::nullopt;
  auto norm_word = [](const std::string& w) {
    return w == "never" ? std::string("not") : w;
  };
  if (i + 1 < tokens.size() && !tokens[i].clause_break) {
    std::string two = norm_word(tokens[i].lower) + " " +
                      norm_word(tokens[i + 1].lower);
    if (map.knows(two))
      return ModalMatch{i, i + 1, map.canonicalize(two)};
  }
  if (map.knows(tokens[i].lower))
    return ModalMatch{i, i, map.canonicalize(tokens[i].lower)};
  return std::nullopt;
}

// Longest role-lexicon phrase starting at token `p` (up to 4 tokens).
std::size_t role_phrase_end(const std::vector<Token>& tokens, std::size_t p,
                            const RoleLexicon& roles) {
  std::size_t best = 0;
  std::string phrase;
  for (std::size_t len = 1; len <= 4 && p + len <= tokens.size(); ++len) {
    if (len > 1) phrase += ' ';
    phrase += tokens[p + len - 1].lower;
    if (roles.lookup(phrase)) best = p + len;
    if (tokens[p + len - 1].clause_break) break;
  }
  return best;  // 0 when no match
}

bool is_verb_form(const Token& t, const VerbLexicon& verbs) {
  if (!std::all_of(t.lower.begin(), t.lower.end(),
                   [](char c) { return is_alpha(c) || c == '-'; }))
    return false;
  bool known = false;
  verbs.lemma_of(t.lower, &known);
  return known;
}

struct Conjunct {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
};

bool agent_like(const std::vector<Token>& tokens, const Conjunct& c,
                std::string_view sentence, const RoleLexicon& roles,
                std::size_t sentence_first_core) {
  const Token& head_token = tokens[c.last];
  std::string head = singularize(head_token.lower);
  std::string surface;
  for (std::size_t i = c.first; i <= c.last; ++i) {
    if (!surface.empty()) surface += ' ';
    surface += tokens[i].lower;
  }
  if (roles.lookup(surface) || roles.lookup(head) ||
      roles.contains_canonical(head))
    return true;
  if (agent_nouns().count(head)) return true;
  if (head.size() >= 5 && !agent_suffix_blocklist().count(head)) {
    auto ends = [&](std::string_view suf) {
      return head.compare(head.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (ends("er") || ends("or") || ends("ee")) return true;
  }
  for (std::size_t i = c.first; i <= c.last; ++i) {
    const Token& t = tokens[i];
    std::string_view core =
        sentence.substr(t.core_start, t.core_end - t.core_start);
    if (core.empty() || !is_upper(core[0])) continue;
    bool all_caps = core.size() >= 2 &&
                    std::all_of(core.begin(), core.end(), [](char ch) {
                      return !is_alpha(ch) || is_upper(ch);
                    });
    if (all_caps) return true;
    if (t.core_start > sentence_first_core) return true;  // mid-sentence cap
  }
  return false;
}

struct PredicateGroup {
  std::optional<ModalMatch> modal;
  std::size_t verb = 0;
  std::size_t object_first = 0, object_last = 0;  // inclusive; 0-width = none
  bool has_object = false;
};

}  // namespace

ParserConfig ParserConfig::defaults() {
  ParserConfig cfg;
  cfg.roles = RoleLexicon::from_config(defaults::kRoleLexicon);
  cfg.deontics = DeonticMap::from_config(defaults::kDeonticMap);
  cfg.polarity = PolarityTable::from_config(defaults::kPolarityMap);
  cfg.typology = ActionTypology::from_config(defaults::kTypologyMap);
  cfg.verbs = VerbLexicon::from_config(defaults::kVerbLexicon);
  return cfg;
}

std::vector<InstitutionalStatement> extract_statements(
    std::string_view sentence, const ParserConfig& config) {
  std::vector<InstitutionalStatement> statements;
  std::vector<Token> tokens = tokenize(sentence);
  if (tokens.empty()) return statements;

  // list markers survive tokenization when numbered ("1." keeps core "1")
  std::size_t s0 = 0;
  while (s0 < tokens.size() &&
         std::all_of(tokens[s0].lower.begin(), tokens[s0].lower.end(),
                     [](char c) {
                       return std::isdigit(static_cast<unsigned char>(c));
                     }) &&
         tokens[s0].raw.size() > tokens[s0].lower.size())
    ++s0;
  if (s0 >= tokens.size()) return statements;

  // earliest modal or verb form decides where the predicate begins
  std::size_t role_end = 0;
  for (std::size_t p = s0; p < std::min(s0 + 3, tokens.size()); ++p) {
    role_end = std::max(role_end, role_phrase_end(tokens, p, config.roles));
  }
  std::size_t modal_idx = tokens.size(), verb_idx = tokens.size();
  std::optional<ModalMatch> first_modal;
  for (std::size_t i = s0 + 1; i < tokens.size(); ++i) {
    if (auto m = modal_at(tokens, i, config.deontics)) {
      modal_idx = i;
      first_modal = m;
      break;
    }
  }
  for (std::size_t i = std::max(s0 + 1, role_end); i < tokens.size(); ++i) {
    if (i >= modal_idx) break;
    if (is_verb_form(tokens[i], config.verbs)) {
      verb_idx = i;
      break;
    }
  }
  std::size_t pred_start = std::min(modal_idx, verb_idx);
  if (pred_start >= tokens.size()) return statements;

  // subject runs from the last clause break before the predicate
  std::size_t subj_begin = s0;
  for (std::size_t i = pred_start; i-- > s0 + 1;) {
    if (tokens[i - 1].clause_break) {
      subj_begin = i;
      break;
    }
  }
  if (subj_begin >= pred_start) return statements;

  // coordinated subjects split into conjuncts
  std::vector<Conjunct> conjuncts;
  std::size_t start = subj_begin;
  for (std::size_t i = subj_begin; i < pred_start; ++i) {
    bool conj_word = tokens[i].lower == "and" || tokens[i].lower == "or";
    if (conj_word) {
      if (i > start) conjuncts.push_back({start, i - 1});
      start = i + 1;
    } else if (tokens[i].clause_break && i + 1 < pred_start) {
      conjuncts.push_back({start, i});
      start = i + 1;
    }
  }
  if (start < pred_start) conjuncts.push_back({start, pred_start - 1});

  // shed leading determiners per conjunct, drop emptied ones
  std::vector<Conjunct> subjects;
  for (Conjunct c : conjuncts) {
    while (c.first <= c.last && determiner_words().count(tokens[c.first].lower))
      ++c.first;
    if (c.first <= c.last) subjects.push_back(c);
  }
  if (subjects.empty()) return statements;

  std::erase_if(subjects, [&](const Conjunct& c) {
    return !agent_like(tokens, c, sentence, config.roles,
                       tokens[s0].core_start);
  });
  if (subjects.empty()) return statements;

  // predicate groups
  std::vector<PredicateGroup> groups;
  std::size_t i = pred_start;
  while (i < tokens.size()) {
    PredicateGroup g;
    if (auto m = modal_at(tokens, i, config.deontics)) {
      g.modal = m;
      i = m->last + 1;
      if (m->first == m->last && i < tokens.size() &&
          (tokens[i].lower == "not" || tokens[i].lower == "never")) {
        // negation the config does not pair with this modal: keep it in the
        // raw phrase; an unknown combination canonicalizes to NONE
        g.modal->last = i;
        g.modal->deontic =
            config.deontics.canonicalize(tokens[m->first].lower + " not");
        ++i;
      }
    }
    while (i < tokens.size() && is_adverbish(tokens[i].lower)) ++i;
    if (i >= tokens.size()) break;
    g.verb = i++;
    // direct object: the noun phrase right after the verb
    if (i < tokens.size() && !preposition_words().count(tokens[i].lower) &&
        !is_adverbish(tokens[i].lower) && tokens[i].lower != "and" &&
        tokens[i].lower != "or" && !tokens[g.verb].clause_break) {
      std::size_t np_start = i;
      std::size_t j = i;
      while (j < tokens.size()) {
        const Token& t = tokens[j];
        if (preposition_words().count(t.lower) || is_adverbish(t.lower)) break;
        if (t.lower == "and" || t.lower == "or") {
          bool next_starts_group =
              j + 1 < tokens.size() &&
              (modal_at(tokens, j + 1, config.deontics).has_value() ||
               is_verb_form(tokens[j + 1], config.verbs));
          if (next_starts_group) break;
        }
        ++j;
        if (t.clause_break) break;
      }
      if (j > np_start) {
        g.object_first = np_start;
        g.object_last = j - 1;
        g.has_object = true;
        i = j;
      }
    }
    groups.push_back(g);
    // another group only right after a coordinating conjunction
    if (i < tokens.size() &&
        (tokens[i].lower == "and" || tokens[i].lower == "or") &&
        i + 1 < tokens.size() &&
        (modal_at(tokens, i + 1, config.deontics).has_value() ||
         is_verb_form(tokens[i + 1], config.verbs))) {
      i = i + 1;
      continue;
    }
    break;
  }
  if (groups.empty()) return statements;

  auto span_text = [&](std::size_t a, std::size_t b) {  // token range, incl.
    return std::string(sentence.substr(tokens[a].core_start,
                                       tokens[b].core_end -
                                           tokens[a].core_start));
  };

  int index = 0;
  for (const Conjunct& subject : subjects) {
    for (const PredicateGroup& g : groups) {
      InstitutionalStatement st;
      st.index_in_sentence = index++;
      st.role_raw = span_text(subject.first, subject.last);
      st.role_span = {tokens[subject.first].core_start,
                      tokens[subject.last].core_end, true};
      auto [canon, uncontrolled] = normalize_role(st.role_raw, config.roles);
      st.role_canon = canon;
      st.role_uncontrolled = uncontrolled;
      if (g.modal) {
        st.deontic_raw = span_text(g.modal->first, g.modal->last);
        st.deontic_span = {tokens[g.modal->first].core_start,
                           tokens[g.modal->last].core_end, true};
        st.deontic = g.modal->deontic;
      }
      st.action_raw = span_text(g.verb, g.verb);
      st.action_span = {tokens[g.verb].core_start, tokens[g.verb].core_end,
                        true};
      st.action_lemma = config.verbs.lemma_of(tokens[g.verb].lower);
      st.action_type = config.typology.classify(st.action_lemma);
      if (g.has_object) {
        st.object_raw = span_text(g.object_first, g.object_last);
        st.object_span = {tokens[g.object_first].core_start,
                          tokens[g.object_last].core_end, true};
        std::size_t head = g.object_last;
        while (head > g.object_first &&
               (tokens[head].lower == "and" || tokens[head].lower == "or"))
          --head;
        st.object_head = singularize(tokens[head].lower);
        st.has_object = true;
      }
      statements.push_back(std::move(st));
    }
  }
  return statements;
}

}  // namespace govmine::ig
