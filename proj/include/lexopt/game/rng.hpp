#pragma once

#include <cstdint>
#include <random>

namespace lexopt::game {

/// Seeded 64-bit Mersenne Twister with portable conversions (the standard
/// distributions are implementation-defined, so they are not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in the open interval (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }
  /// Unbiased integer in [0, n).
  std::uint64_t index(std::uint64_t n);
  /// Standard Gumbel sample -log(-log U).
  double gumbel();

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent sub-seeds from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace lexopt::game
