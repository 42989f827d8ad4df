// Deterministic counter-based pseudo-random generator.
//
// The generator is a pure function of (seed, counter): output_i =
// splitmix64_finalizer(seed + (i+1) * 0x9e3779b97f4a7c15), i.e. the SplitMix64
// stream seeded at `seed`, addressable by index. This gives reproducible,
// platform-independent streams (no reliance on std::distribution internals)
// and O(1) skip-ahead.
#pragma once

#include <cstdint>

namespace olo {

/// SplitMix64 finalizer (Stafford mix 13).
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  /// i-th raw output of the stream (independent of call order).
  std::uint64_t at(std::uint64_t i) const {
    return splitmix64_mix(seed_ + (i + 1) * 0x9e3779b97f4a7c15ULL);
  }

  std::uint64_t next_u64() { return at(counter_++); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1] (never zero; safe under log).
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via the Box-Muller transform (cosine branch only, two
  /// uniforms consumed per call). Spelled out rather than delegated to
  /// std::normal_distribution so streams are identical across standard
  /// library implementations.
  double next_gaussian();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace olo
