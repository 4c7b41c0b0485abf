#include "lexopt/mc/philox.hpp"

namespace lexopt::mc {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint32_t stream_hi, std::uint32_t stream_lo)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      counter_{0u, 0u, stream_lo, stream_hi} {}

CounterStream CounterStream::for_listener(std::uint64_t seed, std::uint32_t condition,
                                          std::uint64_t listener) {
  // Fold the listener's high word into the key so the (hi, lo) coordinates
  // stay unique for indices beyond 2^32.
  const std::uint64_t folded = seed ^ ((listener >> 32) * 0x9E3779B97F4A7C15ull);
  return CounterStream(folded, condition, static_cast<std::uint32_t>(listener));
}

void CounterStream::refill() {
  block_ = philox4x32_10(counter_, key_);
  if (++counter_[0] == 0) ++counter_[1];
  used_ = 0;
}

std::uint32_t CounterStream::next_u32() {
  if (used_ == 4) refill();
  return block_[used_++];
}

double CounterStream::next_uniform() {
  const std::uint64_t hi = next_u32() >> 5;  // 27 bits
  const std::uint64_t lo = next_u32() >> 6;  // 26 bits
  return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

}  // namespace lexopt::mc
