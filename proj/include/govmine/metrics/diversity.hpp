#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace govmine::metrics {

// Distributions passed to jsd() must share one aligned cluster-id support;
// silently unioning mismatched supports would hide upstream bugs.
struct AlignmentError : std::invalid_argument {
  explicit AlignmentError(const std::string& what)
      : std::invalid_argument(what) {}
};

struct UndefinedInputError : std::invalid_argument {
  explicit UndefinedInputError(const std::string& what)
      : std::invalid_argument(what) {}
};

enum class Snapshot { kInitial, kLatest };

const char* snapshot_name(Snapshot s);

// Per-repository, per-feature cluster counts for one snapshot. The support
// (key set) covers every cluster of the joint job, zero counts included, so
// initial/latest pairs align by construction.
struct FeatureDistribution {
  std::string repo_id;
  std::string feature;
  Snapshot snapshot = Snapshot::kInitial;
  std::map<int, long> counts;
  long n = 0;

  static FeatureDistribution from_counts(std::string repo_id,
                                         std::string feature,
                                         Snapshot snapshot,
                                         std::map<int, long> counts);

  double prob(int cluster) const;
};

// Shannon entropy in bits, 0*log2(0) = 0. Undefined for empty snapshots.
double entropy_bits(const FeatureDistribution& dist);

double delta_entropy(const FeatureDistribution& initial,
                     const FeatureDistribution& latest);

// Jensen-Shannon divergence in bits between two aligned distributions.
double jsd_bits(const FeatureDistribution& p, const FeatureDistribution& q);

// Number of clusters with at least `tau` member statements.
long richness(const FeatureDistribution& dist, long tau = 2);

long delta_richness(const FeatureDistribution& initial,
                    const FeatureDistribution& latest, long tau = 2);

struct Eligibility {
  bool h_jsd = false;  // both snapshots carry >= 5 labeled statements
  bool k = false;      // both snapshots carry >= 1 labeled statement
};

Eligibility screen_eligibility(const FeatureDistribution& initial,
                               const FeatureDistribution& latest);

// One row of metrics.csv: everything computed for a repo x feature pair.
struct PairedMetrics {
  std::string repo_id;
  std::string feature;
  std::optional<double> h_initial;
  std::optional<double> h_latest;
  std::optional<double> delta_h;
  std::optional<double> jsd;
  long k_initial = 0;
  long k_latest = 0;
  long delta_k = 0;
  std::optional<double> rarefied_delta_k;
  long n_initial = 0;
  long n_latest = 0;
  bool eligible_h_jsd = false;
  bool eligible_k = false;
};

}  // namespace govmine::metrics
