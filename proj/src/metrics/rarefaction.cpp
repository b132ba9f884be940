#include "govmine/metrics/rarefaction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "govmine/common/rng.hpp"
#include "govmine/metrics/diversity.hpp"

namespace govmine::metrics {

namespace {

std::uint64_t ids_hash(const std::vector<SampledStatement>& members) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& m : members) {
    h = fnv1a(m.statement_id.data(), m.statement_id.size(), h);
    h = fnv1a("\x1f", 1, h);
  }
  return h;
}

// Richness of one drawn sample: clusters reaching tau within the draw.
long sample_richness(const std::vector<int>& clusters,
                     const std::vector<std::uint32_t>& picked, long tau,
                     std::vector<long>& scratch_counts,
                     const std::map<int, int>& cluster_slot) {
  std::fill(scratch_counts.begin(), scratch_counts.end(), 0L);
  for (std::uint32_t i : picked) ++scratch_counts[clusters[i]];
  long k = 0;
  for (long c : scratch_counts)
    if (c >= tau) ++k;
  (void)cluster_slot;
  return k;
}

}  // namespace

double rarefied_delta_richness(std::vector<SampledStatement> initial,
                               std::vector<SampledStatement> latest,
                               const RarefactionParams& params, long tau,
                               Exec exec) {
  if (params.cap < 1 || params.repeats < 1)
    throw std::invalid_argument("rarefaction: cap and repeats must be >= 1");
  if (initial.empty() || latest.empty())
    throw UndefinedInputError("rarefaction requires n >= 1 in both snapshots");

  auto by_id = [](const SampledStatement& a, const SampledStatement& b) {
    return a.statement_id < b.statement_id;
  };
  std::sort(initial.begin(), initial.end(), by_id);
  std::sort(latest.begin(), latest.end(), by_id);

  // Dense cluster slots shared by both snapshots.
  std::map<int, int> slot;
  for (const auto& m : initial) slot.emplace(m.cluster, 0);
  for (const auto& m : latest) slot.emplace(m.cluster, 0);
  int next = 0;
  for (auto& [cluster, s] : slot) s = next++;

  auto slots_of = [&](const std::vector<SampledStatement>& ms) {
    std::vector<int> out(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i)
      out[i] = slot.at(ms[i].cluster);
    return out;
  };
  const std::vector<int> init_clusters = slots_of(initial);
  const std::vector<int> late_clusters = slots_of(latest);

  const auto n_init = static_cast<std::uint32_t>(initial.size());
  const auto n_late = static_cast<std::uint32_t>(latest.size());
  const std::uint32_t n_r = std::min(
      {n_init, n_late, static_cast<std::uint32_t>(params.cap)});

  const std::uint64_t seed_init = mix_seed(params.seed, ids_hash(initial));
  const std::uint64_t seed_late = mix_seed(params.seed, ids_hash(latest));

  const long repeats = params.repeats;
  std::vector<double> diffs(static_cast<std::size_t>(repeats), 0.0);

  auto one_repeat = [&](long t) {
    std::vector<long> counts(slot.size(), 0);
    auto draw = [&](std::uint32_t n, std::uint64_t side_seed,
                    const std::vector<int>& clusters) {
      SplitMix64 rng(mix_seed(side_seed, static_cast<std::uint64_t>(t)));
      std::vector<std::uint32_t> picked;
      if (params.with_replacement) {
        picked.resize(n_r);
        for (std::uint32_t i = 0; i < n_r; ++i)
          picked[i] = static_cast<std::uint32_t>(rng.bounded(n));
      } else {
        picked = sample_without_replacement(n, n_r, rng);
      }
      return sample_richness(clusters, picked, tau, counts, slot);
    };
    long k_init = draw(n_init, seed_init, init_clusters);
    long k_late = draw(n_late, seed_late, late_clusters);
    diffs[static_cast<std::size_t>(t)] =
        static_cast<double>(k_late - k_init);
  };

  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (long t = 0; t < repeats; ++t) one_repeat(t);
  } else {
    for (long t = 0; t < repeats; ++t) one_repeat(t);
  }

  // Fixed-order reduction keeps the result independent of thread count.
  double sum = 0.0;
  for (double d : diffs) sum += d;
  return sum / static_cast<double>(repeats);
}

}  // namespace govmine::metrics
