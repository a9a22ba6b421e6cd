#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace cifc {

/// Seeded generator with platform-independent draws (std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  double exponential() { return -std::log1p(-uniform()); }

  /// Symmetric Dirichlet(1) draw written into `out`.
  void dirichlet(std::span<double> out) {
    double total = 0.0;
    for (double& v : out) {
      v = exponential();
      total += v;
    }
    for (double& v : out) v /= total;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives a child seed; used to give each sub-task an independent stream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace cifc
