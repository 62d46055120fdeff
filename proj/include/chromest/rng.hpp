#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace chromest {

/// SplitMix64 finalizer. Used to turn (seed, stream) pairs into well-spread
/// engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seedable random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded integers and unit doubles are derived here rather than
/// through the <random> distributions, whose algorithms are
/// implementation-defined, so a (seed, stream) pair yields the same draws on
/// every platform.
///
/// Independent substreams (one per worker, one per generator retry) come from
/// for_stream(seed, k), which seeds the engine with
/// splitmix64(seed ^ splitmix64(k)).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed ^ splitmix64(stream)));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return engine_(); }

  /// Uniform integer in [0, bound). Rejection sampling; bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t limit = max() - (max() % bound + 1) % bound;
    std::uint64_t r = engine_();
    while (r > limit) r = engine_();
    return r % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace chromest
