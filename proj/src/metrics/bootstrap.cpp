#include "govmine/metrics/bootstrap.hpp"

#include <algorithm>
#include <stdexcept>

#include "govmine/common/rng.hpp"
#include "govmine/common/stats.hpp"

namespace govmine::metrics {

std::vector<double> bootstrap_replicates(const std::vector<double>& values,
                                         const BootstrapConfig& config,
                                         Exec exec) {
  if (values.empty())
    throw std::invalid_argument("bootstrap over empty value list");
  if (config.replicates < 1)
    throw std::invalid_argument("bootstrap requires B >= 1");
  const long B = config.replicates;
  const auto n = static_cast<std::uint64_t>(values.size());
  std::vector<double> reps(static_cast<std::size_t>(B), 0.0);

  auto one = [&](long b) {
    SplitMix64 rng(mix_seed(config.seed, static_cast<std::uint64_t>(b)));
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) sum += values[rng.bounded(n)];
    reps[static_cast<std::size_t>(b)] = sum / static_cast<double>(n);
  };

  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (long b = 0; b < B; ++b) one(b);
  } else {
    for (long b = 0; b < B; ++b) one(b);
  }
  return reps;
}

BootstrapCI bootstrap_mean_ci(const std::vector<double>& values,
                              const BootstrapConfig& config, Exec exec) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw std::invalid_argument("bootstrap alpha must lie in (0, 1)");
  std::vector<double> reps = bootstrap_replicates(values, config, exec);
  std::sort(reps.begin(), reps.end());
  BootstrapCI ci;
  ci.mean = mean(values);
  ci.lo = nearest_rank_quantile_sorted(reps, config.alpha / 2.0);
  ci.hi = nearest_rank_quantile_sorted(reps, 1.0 - config.alpha / 2.0);
  ci.replicates = config.replicates;
  ci.alpha = config.alpha;
  ci.n = static_cast<long>(values.size());
  return ci;
}

}  // namespace govmine::metrics
