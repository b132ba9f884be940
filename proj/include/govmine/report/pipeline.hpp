#pragma once

#include <optional>
#include <string>
#include <vector>

#include "govmine/metrics/bootstrap.hpp"
#include "govmine/report/run_config.hpp"

namespace govmine::report {

inline constexpr const char* kToolVersion = "0.1.0";

// Fixed feature order for every artifact and table.
const std::vector<std::string>& feature_order();

struct AggregateRow {
  std::string feature;
  std::string statistic;  // h_initial, h_latest, delta_h, jsd, k_initial,
                          // k_latest, delta_k, rarefied_delta_k
  long n = 0;
  std::optional<metrics::BootstrapCI> ci;
};

struct ReportBundle {
  std::vector<AggregateRow> rows;
  std::string header;  // one-line run parameters
};

// Pipeline stages; each reads its upstream artifacts from `in_dir`
// (defaults to the config's out_dir) and writes into out_dir, so any stage
// can be replayed or fed substituted inputs.
void stage_mine(const RunConfig& config);
void stage_normalize(const RunConfig& config, const std::string& in_dir = "");
void stage_parse(const RunConfig& config, const std::string& in_dir = "");
void stage_cluster(const RunConfig& config, const std::string& in_dir = "");
void stage_metrics(const RunConfig& config, const std::string& in_dir = "");
ReportBundle stage_report(const RunConfig& config,
                          const std::string& in_dir = "");

// All stages in order: mine, normalize, parse, cluster, metrics, report.
ReportBundle run_all(const RunConfig& config);

}  // namespace govmine::report
