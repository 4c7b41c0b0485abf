#pragma once

#include <array>
#include <cstdint>

namespace lexopt::mc {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// the output block is a pure function of (counter, key).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Sequential uniform draws from one logical stream. A stream is identified by
/// a 64-bit seed and two 32-bit stream coordinates; draws advance a block
/// counter, so any stream can be reconstructed from its identity alone.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint32_t stream_hi, std::uint32_t stream_lo);
  /// Stream keyed by a 64-bit listener index and a 32-bit condition index.
  static CounterStream for_listener(std::uint64_t seed, std::uint32_t condition,
                                    std::uint64_t listener);

  std::uint32_t next_u32();
  /// Uniform double in [0, 1) with 53 random bits.
  double next_uniform();

 private:
  void refill();

  PhiloxKey key_;
  PhiloxCounter counter_;
  PhiloxCounter block_{};
  int used_ = 4;
};

}  // namespace lexopt::mc
