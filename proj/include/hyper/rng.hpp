#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hyper {

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, counter), so draws can be taken in any order or in
/// parallel and still reproduce bit-identically.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  static std::uint64_t mix(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(mix(mix(seed_) ^ stream_) + counter);
  }

  /// Uniform in the open interval (0, 1).
  double uniform(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on counters 2c and 2c+1.
  double normal(std::uint64_t counter) const {
    const double u1 = uniform(2 * counter);
    const double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  CounterRng substream(std::uint64_t s) const { return CounterRng(seed_, mix(stream_ ^ mix(s))); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace hyper
