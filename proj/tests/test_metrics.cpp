#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "govmine/common/rng.hpp"
#include "govmine/metrics/bootstrap.hpp"
#include "govmine/metrics/diversity.hpp"
#include "govmine/metrics/rarefaction.hpp"
#include "helpers/oracles.hpp"

using namespace govmine;
using metrics::FeatureDistribution;
using metrics::Snapshot;

namespace {

FeatureDistribution dist(std::map<int, long> counts,
                         Snapshot snap = Snapshot::kInitial) {
  return FeatureDistribution::from_counts("r", "roles", snap,
                                          std::move(counts));
}

std::vector<double> probs_of(const FeatureDistribution& d) {
  std::vector<double> p;
  for (const auto& [cluster, c] : d.counts)
    p.push_back(double(c) / double(d.n));
  return p;
}

}  // namespace

TEST_CASE("entropy closed forms") {
  CHECK(metrics::entropy_bits(dist({{0, 1}, {1, 1}, {2, 1}, {3, 1}})) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(metrics::entropy_bits(dist({{0, 7}})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(metrics::entropy_bits(dist({{0, 2}, {1, 1}, {2, 1}})) ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK_THROWS_AS(metrics::entropy_bits(dist({})),
                  metrics::UndefinedInputError);
  CHECK(metrics::entropy_bits(dist({{0, 3}, {1, 0}})) ==
        doctest::Approx(0.0).epsilon(1e-12));  // zero cells contribute 0
}

TEST_CASE("delta entropy is antisymmetric and zero on identity") {
  auto a = dist({{0, 2}, {1, 2}});
  auto b = dist({{0, 1}, {1, 1}, {2, 1}, {3, 1}}, Snapshot::kLatest);
  CHECK(metrics::delta_entropy(a, a) == doctest::Approx(0.0));
  auto point = dist({{0, 4}, {1, 0}, {2, 0}, {3, 0}});
  auto uniform = dist({{0, 1}, {1, 1}, {2, 1}, {3, 1}}, Snapshot::kLatest);
  CHECK(metrics::delta_entropy(point, uniform) == doctest::Approx(2.0));
  CHECK(metrics::delta_entropy(uniform, point) == doctest::Approx(-2.0));
  (void)b;
}

TEST_CASE("jsd examples and error paths") {
  auto p = dist({{0, 1}, {1, 0}});
  auto q_same = dist({{0, 1}, {1, 0}}, Snapshot::kLatest);
  CHECK(metrics::jsd_bits(p, q_same) == doctest::Approx(0.0).epsilon(1e-12));

  auto disjoint_p = dist({{0, 3}, {1, 0}});
  auto disjoint_q = dist({{0, 0}, {1, 5}}, Snapshot::kLatest);
  CHECK(metrics::jsd_bits(disjoint_p, disjoint_q) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // p=[1,0], q=[0.5,0.5]: independent numeric evaluation gives 0.311278
  auto half = dist({{0, 1}, {1, 1}}, Snapshot::kLatest);
  CHECK(metrics::jsd_bits(p, half) ==
        doctest::Approx(0.3112781244591328).epsilon(1e-9));

  auto mismatched = dist({{0, 1}, {2, 1}}, Snapshot::kLatest);
  CHECK_THROWS_AS(metrics::jsd_bits(p, mismatched), metrics::AlignmentError);
}

TEST_CASE("richness thresholds") {
  CHECK(metrics::richness(dist({{0, 3}, {1, 1}, {2, 2}}), 2) == 2);
  CHECK(metrics::richness(dist({{0, 1}, {1, 1}, {2, 1}}), 2) == 0);
  CHECK(metrics::richness(dist({{0, 2}}), 2) == 1);  // boundary
  auto a = dist({{0, 2}, {1, 2}});
  auto same = dist({{0, 2}, {1, 2}}, Snapshot::kLatest);
  CHECK(metrics::delta_richness(a, same, 2) == 0);
  auto plus = dist({{0, 2}, {1, 2}, {2, 2}}, Snapshot::kLatest);
  // support alignment: initial sees the new cluster with count 0
  auto a3 = dist({{0, 2}, {1, 2}, {2, 0}});
  CHECK(metrics::delta_richness(a3, plus, 2) == 1);
  auto below = dist({{0, 2}, {1, 2}, {2, 1}}, Snapshot::kLatest);
  CHECK(metrics::delta_richness(a3, below, 2) == 0);
}

TEST_CASE("richness is monotone as tau decreases") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<int, long> counts;
    int support = 1 + int(rng.bounded(8));
    for (int k = 0; k < support; ++k) counts[k] = long(rng.bounded(6));
    counts[0] += 1;  // keep n >= 1
    auto d = dist(counts);
    long prev = -1;
    for (long tau = 5; tau >= 1; --tau) {
      long k = metrics::richness(d, tau);
      if (prev >= 0) CHECK(k >= prev);
      prev = k;
    }
  }
}

TEST_CASE("metric oracle equivalence on random distributions") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    int support = 1 + int(rng.bounded(12));
    std::map<int, long> c1, c2;
    long n1 = 0, n2 = 0;
    for (int k = 0; k < support; ++k) {
      c1[k] = long(rng.bounded(10));
      c2[k] = long(rng.bounded(10));
      n1 += c1[k];
      n2 += c2[k];
    }
    if (n1 == 0) {
      c1[0] = 1;
      n1 = 1;
    }
    if (n2 == 0) {
      c2[0] = 1;
      n2 = 1;
    }
    auto d1 = dist(c1);
    auto d2 = dist(c2, Snapshot::kLatest);

    std::vector<long> counts1, counts2;
    for (const auto& [k, c] : c1) counts1.push_back(c);
    for (const auto& [k, c] : c2) counts2.push_back(c);

    CHECK(std::abs(metrics::entropy_bits(d1) -
                   oracles::entropy_bits(counts1)) <= 1e-9);
    CHECK(std::abs(metrics::delta_entropy(d1, d2) -
                   (oracles::entropy_bits(counts2) -
                    oracles::entropy_bits(counts1))) <= 1e-9);
    CHECK(std::abs(metrics::jsd_bits(d1, d2) -
                   oracles::jsd_bits(probs_of(d1), probs_of(d2))) <= 1e-9);
    for (long tau : {1L, 2L, 3L}) {
      CHECK(metrics::richness(d1, tau) == oracles::richness(counts1, tau));
      CHECK(metrics::delta_richness(d1, d2, tau) ==
            oracles::richness(counts2, tau) - oracles::richness(counts1, tau));
    }
  }
}

TEST_CASE("jsd properties on random aligned pairs") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 10000; ++trial) {
    int support = 1 + int(rng.bounded(10));
    std::map<int, long> c1, c2;
    long n1 = 0, n2 = 0;
    for (int k = 0; k < support; ++k) {
      c1[k] = long(rng.bounded(8));
      c2[k] = long(rng.bounded(8));
      n1 += c1[k];
      n2 += c2[k];
    }
    if (n1 == 0) c1[0] = 1;
    if (n2 == 0) c2[0] = 1;
    auto d1 = dist(c1);
    auto d2 = dist(c2, Snapshot::kLatest);
    double v = metrics::jsd_bits(d1, d2);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
    CHECK(std::abs(v - metrics::jsd_bits(d2, d1)) <= 1e-12);
    CHECK(metrics::jsd_bits(d1, d1) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("eligibility screens") {
  auto n5 = dist({{0, 5}});
  auto n5b = dist({{0, 5}}, Snapshot::kLatest);
  auto e = metrics::screen_eligibility(n5, n5b);
  CHECK(e.h_jsd);
  CHECK(e.k);
  auto n4 = dist({{0, 4}});
  auto n9 = dist({{0, 9}}, Snapshot::kLatest);
  e = metrics::screen_eligibility(n4, n9);
  CHECK_FALSE(e.h_jsd);
  CHECK(e.k);
  auto n0 = dist({});
  auto n3 = dist({{0, 3}}, Snapshot::kLatest);
  e = metrics::screen_eligibility(n0, n3);
  CHECK_FALSE(e.h_jsd);
  CHECK_FALSE(e.k);
}

namespace {

std::vector<metrics::SampledStatement> members(const std::vector<int>& clusters,
                                               const char* prefix) {
  std::vector<metrics::SampledStatement> out;
  for (std::size_t i = 0; i < clusters.size(); ++i)
    out.push_back({prefix + std::to_string(i), clusters[i]});
  return out;
}

}  // namespace

TEST_CASE("rarefaction equals plain delta richness when samples cover all") {
  // N_init = N_latest = n_r: every draw is the whole snapshot
  auto init = members({0, 0, 1, 1}, "a");
  auto late = members({0, 0, 1, 1, 2, 2}, "b");
  metrics::RarefactionParams params;
  params.cap = 100;
  params.repeats = 50;
  params.seed = 3;
  auto init6 = members({0, 0, 1, 1, 2, 2}, "a");
  double v = metrics::rarefied_delta_richness(init6, late, params, 2);
  CHECK(v == doctest::Approx(0.0).epsilon(1e-12));  // both K = 3 exactly
  (void)init;
}

TEST_CASE("rarefaction matches the exhaustive enumeration oracle") {
  struct Fixture {
    std::vector<int> init;
    std::vector<int> late;
  };
  std::vector<Fixture> fixtures = {
      {{0, 0, 0, 0}, {0, 0, 1, 1}},              // the worked cap example
      {{0, 1, 2, 3}, {0, 0, 1, 1, 2, 2}},
      {{0, 0, 1, 1, 2}, {0, 1, 2, 3, 4, 5}},
      {{0, 0, 0, 1, 1, 2, 2, 3}, {0, 0, 1, 1}},
      {{0, 1}, {2, 3}},
  };
  for (const auto& f : fixtures) {
    metrics::RarefactionParams params;
    params.cap = 4;
    params.repeats = 10000;
    params.seed = 11;
    double mc = metrics::rarefied_delta_richness(members(f.init, "i"),
                                                 members(f.late, "l"), params,
                                                 2);
    double exact = oracles::expected_rarefied_delta(f.init, f.late, 4, 2);
    CHECK(std::abs(mc - exact) <= 0.05);
  }
  // the enumerated single-draw case: init={a x4}, latest={a x2, b x2}
  metrics::RarefactionParams params;
  params.cap = 4;
  params.repeats = 10;
  params.seed = 1;
  double v = metrics::rarefied_delta_richness(members({0, 0, 0, 0}, "i"),
                                              members({0, 0, 1, 1}, "l"),
                                              params, 2);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rarefaction is invariant to statement order and exec policy") {
  auto init = members({0, 0, 1, 2, 2, 3}, "i");
  auto late = members({0, 1, 1, 2, 3, 3, 4, 4}, "l");
  metrics::RarefactionParams params;
  params.cap = 5;
  params.repeats = 500;
  params.seed = 21;
  double base = metrics::rarefied_delta_richness(init, late, params, 2,
                                                 metrics::Exec::kSerial);
  auto shuffled_init = init;
  auto shuffled_late = late;
  std::reverse(shuffled_init.begin(), shuffled_init.end());
  std::rotate(shuffled_late.begin(), shuffled_late.begin() + 3,
              shuffled_late.end());
  double shuffled = metrics::rarefied_delta_richness(
      shuffled_init, shuffled_late, params, 2, metrics::Exec::kSerial);
  CHECK(base == shuffled);
  double parallel = metrics::rarefied_delta_richness(init, late, params, 2,
                                                     metrics::Exec::kParallel);
  CHECK(base == parallel);
}

TEST_CASE("bootstrap degenerate cases and reproducibility") {
  metrics::BootstrapConfig config;
  config.replicates = 500;
  config.seed = 9;

  auto constant = metrics::bootstrap_mean_ci({2.5, 2.5, 2.5, 2.5}, config);
  CHECK(constant.mean == doctest::Approx(2.5));
  CHECK(constant.lo == doctest::Approx(2.5));
  CHECK(constant.hi == doctest::Approx(2.5));

  auto at_zero = metrics::bootstrap_mean_ci({0.0, 0.0, 0.0}, config);
  CHECK(at_zero.lo == doctest::Approx(0.0));
  CHECK(at_zero.hi == doctest::Approx(0.0));
  CHECK_FALSE(at_zero.excludes_zero());  // [0, 0] does not exclude zero

  auto single = metrics::bootstrap_mean_ci({7.0}, config);
  CHECK(single.lo == doctest::Approx(7.0));
  CHECK(single.hi == doctest::Approx(7.0));
  CHECK(single.excludes_zero());

  std::vector<double> values;
  SplitMix64 rng(4);
  for (int i = 0; i < 50; ++i) values.push_back(rng.uniform01() - 0.3);
  auto r1 = metrics::bootstrap_replicates(values, config,
                                          metrics::Exec::kSerial);
  auto r2 = metrics::bootstrap_replicates(values, config,
                                          metrics::Exec::kParallel);
  auto r3 = metrics::bootstrap_replicates(values, config,
                                          metrics::Exec::kParallel);
  CHECK(r1 == r2);  // serial and parallel agree bitwise
  CHECK(r2 == r3);  // reruns agree bitwise

  CHECK_THROWS(metrics::bootstrap_mean_ci({}, config));
}

TEST_CASE("bootstrap CI endpoints are order statistics of the replicates") {
  metrics::BootstrapConfig config;
  config.replicates = 1000;
  config.seed = 31;
  std::vector<double> values;
  SplitMix64 rng(8);
  for (int i = 0; i < 40; ++i) values.push_back(rng.uniform01());
  auto replicates = metrics::bootstrap_replicates(values, config);
  auto ci = metrics::bootstrap_mean_ci(values, config);
  std::sort(replicates.begin(), replicates.end());
  CHECK(ci.lo == replicates[std::size_t(std::ceil(0.025 * 1000)) - 1]);
  CHECK(ci.hi == replicates[std::size_t(std::ceil(0.975 * 1000)) - 1]);
  CHECK(std::binary_search(replicates.begin(), replicates.end(), ci.lo));
  CHECK(std::binary_search(replicates.begin(), replicates.end(), ci.hi));
}

TEST_CASE("entropy bounded by log2 of support size on random draws") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 500; ++trial) {
    std::map<int, long> counts;
    int support = 1 + int(rng.bounded(10));
    long n = 0;
    for (int k = 0; k < support; ++k) {
      counts[k] = long(rng.bounded(9));
      n += counts[k];
    }
    if (n == 0) counts[0] = 1;
    auto d = dist(counts);
    long nonzero = 0;
    for (const auto& [k, c] : counts)
      if (c > 0) ++nonzero;
    double h = metrics::entropy_bits(d);
    CHECK(h >= -1e-12);
    CHECK(h <= std::log2(double(nonzero)) + 1e-9);
  }
  // equality at uniform
  auto uniform = dist({{0, 5}, {1, 5}, {2, 5}, {3, 5}, {4, 5}});
  CHECK(metrics::entropy_bits(uniform) ==
        doctest::Approx(std::log2(5.0)).epsilon(1e-12));
}
