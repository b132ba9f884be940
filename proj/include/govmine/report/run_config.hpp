#pragma once

#include <cstdint>
#include <string>

#include "govmine/metrics/bootstrap.hpp"

namespace govmine::report {

struct RunConfig {
  std::string manifest;  // file of repo paths, or a directory of checkouts
  std::string out_dir = "out";

  // config files; empty fields fall back to the embedded defaults
  std::string patterns_path;
  std::string roles_path;
  std::string deontics_path;
  std::string polarity_path;
  std::string typology_path;
  std::string badges_path;
  std::string abbreviations_path;
  std::string verbs_path;

  double theta = 0.5;
  long tau = 2;
  metrics::RarefactionParams rarefaction;  // seed filled from `seed`
  metrics::BootstrapConfig bootstrap;
  std::uint64_t seed = 0;
  bool resolve_pronouns = true;

  std::string import_statements;  // statements.jsonl bypassing extraction
  std::string import_vectors;     // vectors.jsonl sidecar embeddings
  std::string import_clusters;    // clusters.jsonl bypassing clustering

  static RunConfig from_json_file(const std::string& path);
  std::string to_canonical_json() const;
  std::uint64_t config_hash() const;
  void validate() const;
};

}  // namespace govmine::report
