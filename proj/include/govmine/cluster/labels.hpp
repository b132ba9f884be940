#pragma once

#include <string>
#include <utility>
#include <vector>

#include "govmine/cluster/cluster.hpp"

namespace govmine::cluster {

struct ClusterLabel {
  int cluster_id = 0;
  // up to three terms, scored by class-based tf-idf
  std::vector<std::pair<std::string, double>> top_terms;
};

// Each cluster acts as one pseudo-document: term score =
// (frequency within cluster) * log(1 + N_clusters / clusters containing the
// term). Terms come from member texts; OUTLIER members contribute nothing.
std::vector<ClusterLabel> label_clusters(
    const std::vector<ClusterAssignment>& assignments,
    const std::vector<std::pair<std::string, std::string>>& id_texts);

std::string label_text(const ClusterLabel& label);  // "term1+term2+term3"

}  // namespace govmine::cluster
