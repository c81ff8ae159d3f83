#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace nbh {

/// Stream identifiers. Every random quantity in the library is drawn from a
/// CounterRng keyed by (seed, stream, substream), so the value of a draw only
/// depends on those keys and the draw index, never on call order across
/// components or threads.
namespace stream {
inline constexpr std::uint64_t topology = 1;     // substream: row i
inline constexpr std::uint64_t weights = 2;      // substream: edge (i, j) packed
inline constexpr std::uint64_t labels = 3;
inline constexpr std::uint64_t feature_mask = 4; // substream: item i
inline constexpr std::uint64_t pair_mask = 5;    // substream: row i
inline constexpr std::uint64_t solver = 6;
inline constexpr std::uint64_t bp = 7;
inline constexpr std::uint64_t features = 8;     // substream: item i
inline constexpr std::uint64_t cell = 9;         // experiment-grid cells
}  // namespace stream

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Packs an unordered node pair into a substream id.
constexpr std::uint64_t pair_key(std::uint64_t i, std::uint64_t j) noexcept {
  return (i << 32) ^ j;
}

/// Counter-based generator: draw k of stream (seed, stream, sub) is
/// splitmix64(key + k * golden), with key = splitmix64(seed ^ splitmix64(stream
/// ^ splitmix64(sub))). Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t sub = 0) noexcept
      : key_(splitmix64(seed ^ splitmix64(stream_id ^ splitmix64(sub)))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    ++counter_;
    return splitmix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1], safe for log().
  double uniform_open0() noexcept { return 1.0 - uniform(); }

  /// Standard normal by Box-Muller; the spare value is cached.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open0()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace nbh
