// Times the OpenMP kernels against their serial reference implementations
// and checks they agree bitwise. Run manually: build/bench_kernels [scale]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "govmine/cluster/cluster.hpp"
#include "govmine/common/rng.hpp"
#include "govmine/metrics/bootstrap.hpp"
#include "govmine/metrics/rarefaction.hpp"

using namespace govmine;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

template <typename F>
double time_ms(F&& fn) {
  double t0 = now_ms();
  fn();
  return now_ms() - t0;
}

void row(const char* name, double serial_ms, double parallel_ms,
         bool identical) {
  std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int scale = argc > 1 ? std::atoi(argv[1]) : 1;
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serial code\n");
#endif
  std::printf("%-28s %13s %13s %7s\n", "kernel", "serial", "parallel",
              "speedup");

  {  // bootstrap replicates
    SplitMix64 rng(7);
    std::vector<double> values(400);
    for (double& v : values) v = rng.uniform01();
    metrics::BootstrapConfig config;
    config.replicates = 20000L * scale;
    config.seed = 11;
    std::vector<double> a, b;
    double ts = time_ms([&] {
      a = metrics::bootstrap_replicates(values, config, metrics::Exec::kSerial);
    });
    double tp = time_ms([&] {
      b = metrics::bootstrap_replicates(values, config,
                                        metrics::Exec::kParallel);
    });
    row("bootstrap_replicates", ts, tp, a == b);
  }

  {  // rarefaction repeats
    SplitMix64 rng(13);
    std::vector<metrics::SampledStatement> init, latest;
    for (int i = 0; i < 400; ++i) {
      init.push_back({"s" + std::to_string(i),
                      static_cast<int>(rng.bounded(40))});
      latest.push_back({"t" + std::to_string(i),
                        static_cast<int>(rng.bounded(60))});
    }
    metrics::RarefactionParams params;
    params.cap = 100;
    params.repeats = 20000L * scale;
    params.seed = 5;
    double va = 0, vb = 0;
    double ts = time_ms([&] {
      va = metrics::rarefied_delta_richness(init, latest, params, 2,
                                            metrics::Exec::kSerial);
    });
    double tp = time_ms([&] {
      vb = metrics::rarefied_delta_richness(init, latest, params, 2,
                                            metrics::Exec::kParallel);
    });
    row("rarefied_delta_richness", ts, tp, va == vb);
  }

  {  // clustering distance matrix + merge loop
    SplitMix64 rng(17);
    std::vector<cluster::StatementVector> vectors;
    const int n = 600 * scale, dim = 64;
    for (int i = 0; i < n; ++i) {
      cluster::StatementVector v;
      char id[16];
      std::snprintf(id, sizeof id, "v%05d", i);
      v.statement_id = id;
      v.values.resize(dim);
      double norm_sq = 0;
      for (double& x : v.values) {
        x = rng.uniform01();
        norm_sq += x * x;
      }
      for (double& x : v.values) x /= std::sqrt(norm_sq);
      vectors.push_back(std::move(v));
    }
    cluster::ClusterParams params{0.35};
    std::vector<cluster::ClusterAssignment> a, b;
    double ts = time_ms([&] {
      a = cluster::cluster_vectors(vectors, params, metrics::Exec::kSerial);
    });
    double tp = time_ms([&] {
      b = cluster::cluster_vectors(vectors, params, metrics::Exec::kParallel);
    });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
      same = a[i].statement_id == b[i].statement_id &&
             a[i].cluster_id == b[i].cluster_id;
    row("cluster_vectors", ts, tp, same);
  }
  return 0;
}
