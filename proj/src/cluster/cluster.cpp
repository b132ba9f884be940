#include "govmine/cluster/cluster.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace govmine::cluster {

std::vector<ClusterAssignment> cluster_vectors(
    const std::vector<StatementVector>& vectors, const ClusterParams& params,
    metrics::Exec exec) {
  if (vectors.empty())
    throw std::invalid_argument("cluster_vectors: empty input");

  // canonical processing order: sorted by statement id
  const std::size_t n = vectors.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return vectors[a].statement_id < vectors[b].statement_id;
  });

  // pairwise cosine distances; each cell independent, so the parallel fill
  // matches the serial one exactly
  std::vector<double> dist(n * n, 0.0);
  auto fill_row = [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = 1.0 - cosine(vectors[order[i]], vectors[order[j]]);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  };
  if (exec == metrics::Exec::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i)
      fill_row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) fill_row(i);
  }

  // Lance-Williams average linkage over active cluster slots; slot index
  // doubles as the smallest member position in canonical order
  std::vector<bool> active(n, true);
  std::vector<long> size(n, 1);
  std::vector<int> slot_of(n);  // canonical position -> owning slot
  for (std::size_t i = 0; i < n; ++i) slot_of[i] = static_cast<int>(i);

  for (std::size_t round = 1; round < n; ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        double d = dist[i * n + j];
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
        // ties resolve to the smallest (i, j) pair, which the scan order
        // already guarantees
      }
    }
    if (bi == n || best >= params.theta) break;
    // merge bj into bi (bi keeps the smaller minimum member id)
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      double d = (static_cast<double>(size[bi]) * dist[bi * n + k] +
                  static_cast<double>(size[bj]) * dist[bj * n + k]) /
                 static_cast<double>(size[bi] + size[bj]);
      dist[bi * n + k] = d;
      dist[k * n + bi] = d;
    }
    size[bi] += size[bj];
    active[bj] = false;
    for (std::size_t k = 0; k < n; ++k)
      if (slot_of[k] == static_cast<int>(bj)) slot_of[k] = static_cast<int>(bi);
  }

  // renumber clusters by smallest member position in canonical order
  std::vector<int> cluster_number(n, -1);
  int next = 0;
  std::vector<ClusterAssignment> result(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    int slot = slot_of[pos];
    if (cluster_number[static_cast<std::size_t>(slot)] == -1)
      cluster_number[static_cast<std::size_t>(slot)] = next++;
    result[order[pos]] = {vectors[order[pos]].statement_id,
                          cluster_number[static_cast<std::size_t>(slot)]};
  }
  return result;
}

}  // namespace govmine::cluster
