#pragma once

// Deterministic random streams. std::mt19937_64 has a bit-exact definition in
// the standard; the standard distributions do not, so every draw below is
// built directly from raw engine output.

#include <cstdint>
#include <random>

namespace mobcoin {

/// SplitMix64 finalizer, used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class StreamTag : std::uint64_t {
  Choice = 1,
  Trading = 2,
  Delivery = 3,
  BusinessTrip = 4,
  Population = 5,
  Test = 99,
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
  return mix64(mix64(seed ^ mix64(static_cast<std::uint64_t>(tag))) + index);
}

class Rng {
 public:
  Rng() : engine_(0) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, StreamTag tag, std::uint64_t index) : engine_(derive_seed(seed, tag, index)) {}

  std::uint64_t next_u64() { return engine_(); }
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_() >> 32); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n), n > 0; Lemire-style rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mobcoin
