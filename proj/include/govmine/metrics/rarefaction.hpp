#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace govmine::metrics {

enum class Exec { kSerial, kParallel };

struct RarefactionParams {
  long cap = 100;
  long repeats = 200;
  std::uint64_t seed = 0;
  bool with_replacement = false;  // sensitivity-analysis mode
};

// One labeled statement inside a snapshot, as rarefaction sees it.
struct SampledStatement {
  std::string statement_id;
  int cluster = 0;
};

// Mean over `repeats` draws of the paired richness difference at equal
// sample size n_r = min(N_init, N_latest, cap), threshold `tau` applied
// within each drawn sample. Statements are ordered by id before any draw and
// the repeat seed stream is derived from the sorted ids, so the estimate does
// not depend on input order. Serial and parallel execution agree bitwise.
double rarefied_delta_richness(std::vector<SampledStatement> initial,
                               std::vector<SampledStatement> latest,
                               const RarefactionParams& params, long tau = 2,
                               Exec exec = Exec::kParallel);

}  // namespace govmine::metrics
