#pragma once

#include <cstdint>
#include <limits>

namespace gsco {

// Portable xoshiro256** generator. Independent streams are derived from a
// (seed, stream id) pair: the four state words are consecutive splitmix64
// outputs started at seed ^ (stream * 0xD1B54A32D192ED03). All distributions
// below are implemented here so that draws are identical across standard
// library implementations.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal draw (Box-Muller, both outputs used).
  double normal();

private:
  std::uint64_t state_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Stream ids used by instance generation and the solvers.
namespace streams {
inline constexpr std::uint64_t kSensingMatrix = 1;
inline constexpr std::uint64_t kSupport = 2;
inline constexpr std::uint64_t kSignal = 3;
inline constexpr std::uint64_t kNoise = 4;
inline constexpr std::uint64_t kGraph = 5;
inline constexpr std::uint64_t kDmo = 6;
inline constexpr std::uint64_t kBaseline = 7;
}  // namespace streams

}  // namespace gsco
