#pragma once

#include <string>
#include <vector>

#include "govmine/cluster/encoder.hpp"
#include "govmine/metrics/rarefaction.hpp"

namespace govmine::cluster {

inline constexpr int kOutlierCluster = -1;  // imported pipelines only

struct ClusterParams {
  double theta = 0.5;  // average-linkage cosine-distance merge threshold
};

struct ClusterAssignment {
  std::string statement_id;
  int cluster_id = 0;
};

// Average-linkage agglomerative clustering: merge while the smallest
// inter-cluster cosine distance stays below theta; ties go to the pair with
// the smallest member statement ids. Cluster ids are renumbered by smallest
// member id, so the output is independent of input order. The default
// encoder never produces OUTLIER.
std::vector<ClusterAssignment> cluster_vectors(
    const std::vector<StatementVector>& vectors, const ClusterParams& params,
    metrics::Exec exec = metrics::Exec::kParallel);

}  // namespace govmine::cluster
