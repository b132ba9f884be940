#pragma once

// Straight-from-formula reference implementations, kept independent of the
// library code they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracles {

inline double entropy_bits(const std::vector<long>& counts) {
  long n = 0;
  for (long c : counts) n += c;
  double h = 0.0;
  for (long c : counts) {
    if (c <= 0) continue;
    double p = double(c) / double(n);
    h += -p * std::log2(p);
  }
  return h;
}

inline double kl_bits(const std::vector<double>& p,
                      const std::vector<double>& q) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

inline double jsd_bits(const std::vector<double>& p,
                       const std::vector<double>& q) {
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = 0.5 * (p[i] + q[i]);
  return 0.5 * kl_bits(p, m) + 0.5 * kl_bits(q, m);
}

inline long richness(const std::vector<long>& counts, long tau) {
  long k = 0;
  for (long c : counts)
    if (c >= tau) ++k;
  return k;
}

// Exact expected richness when drawing n_r of the statements without
// replacement, by enumerating every subset. Members are cluster ids.
inline double expected_sample_richness(const std::vector<int>& members,
                                       int n_r, long tau) {
  const int n = static_cast<int>(members.size());
  std::vector<int> pick(n_r);
  double total = 0.0;
  long subsets = 0;
  // iterative combination enumeration
  for (int i = 0; i < n_r; ++i) pick[i] = i;
  for (;;) {
    std::map<int, long> counts;
    for (int i : pick) ++counts[members[i]];
    long k = 0;
    for (const auto& [cluster, c] : counts)
      if (c >= tau) ++k;
    total += double(k);
    ++subsets;
    int pos = n_r - 1;
    while (pos >= 0 && pick[pos] == n - n_r + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int i = pos + 1; i < n_r; ++i) pick[i] = pick[i - 1] + 1;
  }
  return total / double(subsets);
}

// E[K_latest - K_initial] under independent equal-size draws.
inline double expected_rarefied_delta(const std::vector<int>& initial,
                                      const std::vector<int>& latest,
                                      int cap, long tau) {
  int n_r = std::min({int(initial.size()), int(latest.size()), cap});
  return expected_sample_richness(latest, n_r, tau) -
         expected_sample_richness(initial, n_r, tau);
}

// Additions/deletions between two file versions as multiset line diffs.
struct LineDiff {
  long additions = 0;
  long deletions = 0;
};

inline LineDiff multiset_line_diff(const std::vector<std::string>& before,
                                   const std::vector<std::string>& after) {
  std::map<std::string, long> counts;
  for (const auto& l : before) ++counts[l];
  for (const auto& l : after) --counts[l];
  LineDiff d;
  for (const auto& [line, c] : counts) {
    if (c > 0) d.deletions += c;
    if (c < 0) d.additions += -c;
  }
  return d;
}

}  // namespace oracles
