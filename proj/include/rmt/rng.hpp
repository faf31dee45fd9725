#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rmt {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of replica `replica` in an experiment seeded with `seed`. Replica
/// streams depend only on (seed, replica), never on scheduling.
constexpr std::uint64_t replica_seed(std::uint64_t seed,
                                     std::uint64_t replica) noexcept {
  return mix64(seed ^ mix64(replica ^ 0x5851f42d4c957f2dULL));
}

/// Counter-based generator: draw `c` is a pure function of (key, c), so any
/// entry of a sampled object can be regenerated independently.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) noexcept
      : key_(mix64(key)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ ^ mix64(counter));
  }

  /// Uniform on (0, 1], 53 random bits.
  double uniform_open0(std::uint64_t counter) const noexcept {
    return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Standard normal (Box-Muller). Uses its own counter domain, so normal
  /// draw c never shares bits with uniform draw c.
  double normal(std::uint64_t counter) const noexcept {
    const std::uint64_t base = kNormalDomain | (counter << 1);
    const double r = std::sqrt(-2.0 * std::log(uniform_open0(base)));
    return r * std::cos(2.0 * std::numbers::pi * uniform(base | 1));
  }

  /// Unbiased integer in [0, bound) by rejection; consumes counters
  /// starting at `counter` and advances it.
  std::uint64_t below(std::uint64_t bound, std::uint64_t& counter) const noexcept {
    const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % bound;
    for (;;) {
      const std::uint64_t r = bits(counter++);
      if (r < limit) return r % bound;
    }
  }

 private:
  static constexpr std::uint64_t kNormalDomain = std::uint64_t{1} << 63;
  std::uint64_t key_;
};

/// Sequential facade over CounterRng for code that just needs a stream.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) noexcept : rng_(seed) {}

  double uniform() noexcept { return rng_.uniform(counter_++); }
  double normal() noexcept { return rng_.normal(counter_++); }
  std::uint64_t below(std::uint64_t bound) noexcept {
    return rng_.below(bound, counter_);
  }
  /// Poisson(mean) by inversion; adequate for the small means used in tests.
  std::uint64_t poisson(double mean) noexcept {
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u > cdf && k < 100000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace rmt
