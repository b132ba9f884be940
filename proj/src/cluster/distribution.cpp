#include "govmine/cluster/distribution.hpp"

#include <map>

namespace govmine::cluster {

metrics::FeatureDistribution feature_distribution(
    const std::vector<ClusterAssignment>& assignments,
    const std::vector<JobMember>& members, metrics::Snapshot snapshot,
    const std::string& repo_id, const std::string& feature) {
  std::map<std::string, metrics::Snapshot> snap_of;
  for (const auto& m : members) snap_of[m.statement_id] = m.snapshot;

  std::map<int, long> counts;
  for (const auto& a : assignments) {
    if (a.cluster_id == kOutlierCluster) continue;
    counts.emplace(a.cluster_id, 0);  // full joint support, zeros included
  }
  for (const auto& a : assignments) {
    if (a.cluster_id == kOutlierCluster) continue;
    auto it = snap_of.find(a.statement_id);
    if (it == snap_of.end() || it->second != snapshot) continue;
    ++counts[a.cluster_id];
  }
  return metrics::FeatureDistribution::from_counts(repo_id, feature, snapshot,
                                                   std::move(counts));
}

}  // namespace govmine::cluster
