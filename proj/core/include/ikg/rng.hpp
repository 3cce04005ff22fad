#pragma once

#include <cstdint>
#include <random>

namespace ikg {

// splitmix64 finalizer; good avalanche, used to derive independent seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Replication seeds are a pure function of (base seed, policy id, replication
// index) so experiment output is identical regardless of how work is split
// across threads.
inline std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t policy_id,
                              std::uint64_t rep_index) {
  return splitmix64(splitmix64(splitmix64(base_seed) + policy_id) + rep_index);
}

// Gaussian generator with a fully specified algorithm: mt19937_64 plus an
// explicit Box-Muller transform.  std::normal_distribution is not pinned down
// by the standard, so using it would make streams differ across standard
// libraries; this class produces identical streams everywhere.  Each normal()
// call consumes exactly two 64-bit engine outputs (no caching of the second
// Box-Muller deviate).
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    // u1 in (0, 1] so the log is finite; u2 in [0, 1).
    double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ikg
