#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace govmine {

// Nearest-rank quantile over an already sorted range: the ceil(p*n)-th order
// statistic, 1-based, clamped into the sample.
template <typename T>
T nearest_rank_quantile_sorted(const std::vector<T>& sorted, double p) {
  if (sorted.empty())
    throw std::invalid_argument("quantile of empty sample");
  std::size_t n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return sorted[rank - 1];
}

// Median as the lower of the two middle order statistics for even n.
template <typename T>
T lower_median_sorted(const std::vector<T>& sorted) {
  if (sorted.empty())
    throw std::invalid_argument("median of empty sample");
  return sorted[(sorted.size() - 1) / 2];
}

template <typename T>
double mean(const std::vector<T>& values) {
  if (values.empty())
    throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (const T& v : values) s += static_cast<double>(v);
  return s / static_cast<double>(values.size());
}

}  // namespace govmine
