#pragma once

#include <optional>
#include <string>
#include <vector>

#include "govmine/ig/parser.hpp"

namespace govmine::cluster {

enum class FeatureKind { kRole, kAction, kDeontic, kObject };
const char* feature_name(FeatureKind f);  // "roles" | "actions" | ...

// Short text a statement contributes to one feature's clustering job, or
// nullopt when the statement lacks the component (skipped and logged).
// Deontics are tallied over their closed inventory, never rendered.
std::optional<std::string> render_statement(
    const ig::InstitutionalStatement& statement, FeatureKind feature);

struct StatementVector {
  std::string statement_id;
  std::vector<double> values;  // unit Euclidean norm
  enum class Source { kDefaultLexical, kImported } source =
      Source::kDefaultLexical;
};

// Deterministic lexical encoder over one job's corpus: word-token and
// character-trigram counts (tokens weighted double), idf = log(1 + N/df),
// L2-normalized. Identical texts yield identical vectors.
std::vector<StatementVector> encode_lexical(
    const std::vector<std::pair<std::string, std::string>>& id_texts);

// Sidecar vectors keyed by statement id; every requested id must be present
// and all vectors must share one dimension. Vectors are L2-normalized.
std::vector<StatementVector> import_vectors(
    const std::vector<std::string>& statement_ids,
    const std::vector<std::pair<std::string, std::vector<double>>>& sidecar);

double cosine(const StatementVector& a, const StatementVector& b);

}  // namespace govmine::cluster
