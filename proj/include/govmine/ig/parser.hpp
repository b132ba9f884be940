#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "govmine/ig/lexicons.hpp"

namespace govmine::ig {

struct ComponentSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  bool present = false;
};

// One parsed governance rule. Spans are sentence-relative and reconstruct
// the raw component texts exactly.
struct InstitutionalStatement {
  std::string statement_id;  // assigned by the pipeline
  std::string repo_id;
  std::string snapshot;  // "initial" | "latest"
  int block_id = 0;
  std::size_t sentence_start = 0;  // document offset of the source sentence
  int index_in_sentence = 0;

  std::string role_raw;
  std::string role_canon;
  bool role_uncontrolled = false;
  std::string deontic_raw;  // empty when no modal
  Deontic deontic = Deontic::kNone;
  std::string action_raw;
  std::string action_lemma;
  std::string action_type;
  std::string object_raw;   // full direct-object phrase
  std::string object_head;  // singularized head noun
  bool has_object = false;

  ComponentSpan role_span;
  ComponentSpan deontic_span;
  ComponentSpan action_span;
  ComponentSpan object_span;
};

struct ParserConfig {
  RoleLexicon roles;
  DeonticMap deontics;
  PolarityTable polarity;
  ActionTypology typology;
  VerbLexicon verbs;

  // Everything loaded from the embedded default config files.
  static ParserConfig defaults();
};

// Deterministic pattern grammar: subject noun phrase, optional modal, verb,
// optional direct object. Coordinated subjects and coordinated predicates
// each split into separate statements. Sentences without an agent-like
// subject yield nothing.
std::vector<InstitutionalStatement> extract_statements(
    std::string_view sentence, const ParserConfig& config);

}  // namespace govmine::ig
