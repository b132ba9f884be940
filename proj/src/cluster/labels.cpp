#include "govmine/cluster/labels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "govmine/common/text.hpp"

namespace govmine::cluster {

std::vector<ClusterLabel> label_clusters(
    const std::vector<ClusterAssignment>& assignments,
    const std::vector<std::pair<std::string, std::string>>& id_texts) {
  std::map<std::string, const std::string*> text_of;
  for (const auto& [id, text] : id_texts) text_of[id] = &text;

  // per-cluster term frequencies
  std::map<int, std::map<std::string, double>> tf;
  for (const auto& a : assignments) {
    if (a.cluster_id == kOutlierCluster) continue;
    auto it = text_of.find(a.statement_id);
    if (it == text_of.end()) continue;
    auto& bucket = tf[a.cluster_id];
    for (const auto& tok : word_tokens(*it->second)) bucket[tok] += 1.0;
  }

  std::map<std::string, int> cluster_freq;
  for (const auto& [cluster, terms] : tf)
    for (const auto& [term, count] : terms) ++cluster_freq[term];
  const double n_clusters = static_cast<double>(tf.size());

  std::vector<ClusterLabel> labels;
  for (const auto& [cluster, terms] : tf) {
    std::vector<std::pair<std::string, double>> scored;
    for (const auto& [term, count] : terms) {
      double score =
          count * std::log(1.0 + n_clusters /
                                     static_cast<double>(cluster_freq[term]));
      scored.emplace_back(term, score);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (scored.size() > 3) scored.resize(3);
    labels.push_back({cluster, std::move(scored)});
  }
  return labels;
}

std::string label_text(const ClusterLabel& label) {
  std::string out;
  for (const auto& [term, score] : label.top_terms) {
    if (!out.empty()) out += '+';
    out += term;
  }
  return out;
}

}  // namespace govmine::cluster
