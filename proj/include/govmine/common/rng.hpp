#pragma once

#include <cstdint>
#include <vector>

namespace govmine {

// splitmix64. Counter-based seeding keeps every parallel unit of work on its
// own stream: stream(seed, counter) yields the same sequence no matter which
// thread runs it, so parallel and serial kernels produce identical bytes.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) via 128-bit multiply; bias is < 2^-53 for the
  // bounds used here and the mapping is platform-independent.
  std::uint64_t bounded(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  double uniform01() { return (next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  SplitMix64 rng(seed ^ (0x632be59bd9b4e019ULL * (counter + 1)));
  return rng.next();
}

// FNV-1a over bytes, used to fold identifier sets into seed material.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t h = 1469598103934665603ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

// Draws k distinct indices from [0, n) by partial Fisher-Yates; order of the
// returned indices is part of the deterministic contract.
inline std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n,
                                                             std::uint32_t k,
                                                             SplitMix64& rng) {
  std::vector<std::uint32_t> idx(n);
  for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uint32_t j = i + static_cast<std::uint32_t>(rng.bounded(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace govmine
