#pragma once

#include <cstdint>
#include <vector>

#include "govmine/metrics/rarefaction.hpp"

namespace govmine::metrics {

struct BootstrapConfig {
  long replicates = 10000;  // B
  double alpha = 0.05;
  std::uint64_t seed = 0;
};

struct BootstrapCI {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  long replicates = 0;
  double alpha = 0.0;
  long n = 0;  // repositories contributing

  bool excludes_zero() const { return lo > 0.0 || hi < 0.0; }
};

// Equal-weight mean of each with-replacement resample of the per-repository
// values; replicate b draws from its own counter-seeded stream, so serial and
// parallel execution agree bitwise.
std::vector<double> bootstrap_replicates(const std::vector<double>& values,
                                         const BootstrapConfig& config,
                                         Exec exec = Exec::kParallel);

// Percentile interval [Q_{alpha/2}, Q_{1-alpha/2}] over the replicates
// (nearest-rank), mean taken from the original sample.
BootstrapCI bootstrap_mean_ci(const std::vector<double>& values,
                              const BootstrapConfig& config,
                              Exec exec = Exec::kParallel);

}  // namespace govmine::metrics
