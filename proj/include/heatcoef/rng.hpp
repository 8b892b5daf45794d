#pragma once

#include <cstdint>

namespace heatcoef {

/// SplitMix64. Counter-based use (`at`) gives an independent stream per index,
/// so draws can be split across threads without changing results.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// The `index`-th draw of the stream keyed by `seed`, without state.
  static std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
  }
  static double uniform_at(std::uint64_t seed, std::uint64_t index, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(at(seed, index) >> 11) * 0x1.0p-53);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace heatcoef
