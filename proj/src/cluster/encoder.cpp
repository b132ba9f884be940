#include "govmine/cluster/encoder.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "govmine/common/text.hpp"
#include "govmine/metrics/diversity.hpp"

namespace govmine::cluster {

const char* feature_name(FeatureKind f) {
  switch (f) {
    case FeatureKind::kRole: return "roles";
    case FeatureKind::kAction: return "actions";
    case FeatureKind::kDeontic: return "deontic";
    case FeatureKind::kObject: return "objects";
  }
  return "";
}

std::optional<std::string> render_statement(
    const ig::InstitutionalStatement& statement, FeatureKind feature) {
  switch (feature) {
    case FeatureKind::kRole:
      if (statement.role_canon.empty()) return std::nullopt;
      return statement.role_canon;
    case FeatureKind::kAction: {
      if (statement.action_lemma.empty()) return std::nullopt;
      std::string text = statement.action_lemma;
      if (statement.has_object) text += " " + statement.object_head;
      return text;
    }
    case FeatureKind::kObject:
      if (!statement.has_object || statement.object_head.empty())
        return std::nullopt;
      return statement.object_head;
    case FeatureKind::kDeontic:
      return std::nullopt;  // tallied over the deontic inventory directly
  }
  return std::nullopt;
}

namespace {

std::map<std::string, double> term_counts(const std::string& text) {
  std::map<std::string, double> tf;
  std::string folded = to_lower(collapse_ws(text));
  for (const auto& tok : word_tokens(folded)) tf["w:" + tok] += 2.0;
  std::string padded = " " + folded + " ";
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i)
    tf["3:" + padded.substr(i, 3)] += 1.0;
  return tf;
}

}  // namespace

std::vector<StatementVector> encode_lexical(
    const std::vector<std::pair<std::string, std::string>>& id_texts) {
  if (id_texts.empty())
    throw std::invalid_argument("encode_lexical: no texts");

  std::vector<std::map<std::string, double>> tfs;
  tfs.reserve(id_texts.size());
  std::map<std::string, int> df;
  for (const auto& [id, text] : id_texts) {
    tfs.push_back(term_counts(text));
    if (tfs.back().empty())
      throw std::invalid_argument("encode_lexical: empty text for " + id);
    for (const auto& [term, count] : tfs.back()) ++df[term];
  }

  // vocabulary index in sorted term order: the dimension layout is part of
  // the deterministic contract
  std::map<std::string, std::size_t> vocab;
  std::size_t dim = 0;
  for (const auto& [term, count] : df) vocab[term] = dim++;
  const double n_docs = static_cast<double>(id_texts.size());

  std::vector<StatementVector> out;
  out.reserve(id_texts.size());
  for (std::size_t d = 0; d < id_texts.size(); ++d) {
    StatementVector v;
    v.statement_id = id_texts[d].first;
    v.source = StatementVector::Source::kDefaultLexical;
    v.values.assign(dim, 0.0);
    double norm_sq = 0.0;
    for (const auto& [term, count] : tfs[d]) {
      double idf = std::log(1.0 + n_docs / static_cast<double>(df[term]));
      double w = count * idf;
      v.values[vocab[term]] = w;
      norm_sq += w * w;
    }
    double norm = std::sqrt(norm_sq);
    for (double& x : v.values) x /= norm;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<StatementVector> import_vectors(
    const std::vector<std::string>& statement_ids,
    const std::vector<std::pair<std::string, std::vector<double>>>& sidecar) {
  std::map<std::string, const std::vector<double>*> by_id;
  for (const auto& [id, vec] : sidecar) by_id[id] = &vec;

  std::vector<std::string> missing;
  std::size_t dim = 0;
  for (const auto& id : statement_ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      missing.push_back(id);
    } else if (dim == 0) {
      dim = it->second->size();
    }
  }
  if (!missing.empty()) {
    std::string what = "imported vectors missing statement ids:";
    for (const auto& id : missing) what += " " + id;
    throw metrics::UndefinedInputError(what);
  }

  std::vector<StatementVector> out;
  out.reserve(statement_ids.size());
  for (const auto& id : statement_ids) {
    const std::vector<double>& raw = *by_id.at(id);
    if (raw.size() != dim || dim == 0)
      throw metrics::UndefinedInputError(
          "imported vector dimension mismatch for " + id);
    StatementVector v;
    v.statement_id = id;
    v.source = StatementVector::Source::kImported;
    v.values = raw;
    double norm_sq = 0.0;
    for (double x : v.values) norm_sq += x * x;
    if (norm_sq == 0.0)
      throw metrics::UndefinedInputError("imported zero vector for " + id);
    double norm = std::sqrt(norm_sq);
    for (double& x : v.values) x /= norm;
    out.push_back(std::move(v));
  }
  return out;
}

double cosine(const StatementVector& a, const StatementVector& b) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    dot += a.values[i] * b.values[i];
  return dot;
}

}  // namespace govmine::cluster
