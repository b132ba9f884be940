#pragma once

#include <string>
#include <vector>

#include "govmine/cluster/cluster.hpp"
#include "govmine/metrics/diversity.hpp"

namespace govmine::cluster {

struct JobMember {
  std::string statement_id;
  metrics::Snapshot snapshot = metrics::Snapshot::kInitial;
};

// Counts for one snapshot over the joint job's full cluster support
// (zero-count clusters included), so initial and latest distributions align
// by construction. OUTLIER assignments are excluded from the tallies.
metrics::FeatureDistribution feature_distribution(
    const std::vector<ClusterAssignment>& assignments,
    const std::vector<JobMember>& members, metrics::Snapshot snapshot,
    const std::string& repo_id, const std::string& feature);

}  // namespace govmine::cluster
