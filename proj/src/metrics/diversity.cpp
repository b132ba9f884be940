#include "govmine/metrics/diversity.hpp"

#include <cmath>

namespace govmine::metrics {

const char* snapshot_name(Snapshot s) {
  return s == Snapshot::kInitial ? "initial" : "latest";
}

FeatureDistribution FeatureDistribution::from_counts(
    std::string repo_id, std::string feature, Snapshot snapshot,
    std::map<int, long> counts) {
  FeatureDistribution d;
  d.repo_id = std::move(repo_id);
  d.feature = std::move(feature);
  d.snapshot = snapshot;
  d.counts = std::move(counts);
  for (const auto& [cluster, c] : d.counts) {
    if (c < 0)
      throw UndefinedInputError("negative count for cluster " +
                                std::to_string(cluster));
    d.n += c;
  }
  return d;
}

double FeatureDistribution::prob(int cluster) const {
  if (n == 0) return 0.0;
  auto it = counts.find(cluster);
  return it == counts.end()
             ? 0.0
             : static_cast<double>(it->second) / static_cast<double>(n);
}

double entropy_bits(const FeatureDistribution& dist) {
  if (dist.n < 1)
    throw UndefinedInputError("entropy undefined for empty snapshot (" +
                              dist.repo_id + "/" + dist.feature + ")");
  double h = 0.0;
  for (const auto& [cluster, c] : dist.counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(dist.n);
    h -= p * std::log2(p);
  }
  return h;
}

double delta_entropy(const FeatureDistribution& initial,
                     const FeatureDistribution& latest) {
  return entropy_bits(latest) - entropy_bits(initial);
}

double jsd_bits(const FeatureDistribution& p, const FeatureDistribution& q) {
  if (p.counts.size() != q.counts.size() ||
      !std::equal(p.counts.begin(), p.counts.end(), q.counts.begin(),
                  [](const auto& a, const auto& b) {
                    return a.first == b.first;
                  })) {
    throw AlignmentError("jsd over mismatched supports (" + p.repo_id + "/" +
                         p.feature + ")");
  }
  if (p.n < 1 || q.n < 1)
    throw UndefinedInputError("jsd undefined for empty snapshot (" +
                              p.repo_id + "/" + p.feature + ")");
  double acc = 0.0;
  auto it_q = q.counts.begin();
  for (auto it_p = p.counts.begin(); it_p != p.counts.end(); ++it_p, ++it_q) {
    double pp = static_cast<double>(it_p->second) / static_cast<double>(p.n);
    double pq = static_cast<double>(it_q->second) / static_cast<double>(q.n);
    double m = 0.5 * (pp + pq);
    // KL terms with zero numerators vanish; m > 0 whenever either side > 0.
    if (pp > 0.0) acc += 0.5 * pp * std::log2(pp / m);
    if (pq > 0.0) acc += 0.5 * pq * std::log2(pq / m);
  }
  return acc;
}

long richness(const FeatureDistribution& dist, long tau) {
  long k = 0;
  for (const auto& [cluster, c] : dist.counts)
    if (c >= tau) ++k;
  return k;
}

long delta_richness(const FeatureDistribution& initial,
                    const FeatureDistribution& latest, long tau) {
  return richness(latest, tau) - richness(initial, tau);
}

Eligibility screen_eligibility(const FeatureDistribution& initial,
                               const FeatureDistribution& latest) {
  Eligibility e;
  e.h_jsd = initial.n >= 5 && latest.n >= 5;
  e.k = initial.n >= 1 && latest.n >= 1;
  return e;
}

}  // namespace govmine::metrics
