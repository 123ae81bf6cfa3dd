#pragma once

#include <array>
#include <cstdint>

namespace randrk {

/// Counter-based uniform random stream (Philox4x32-10).
///
/// A stream is addressed by (seed, stream_id) and the k-th draw is a pure
/// function of (seed, stream_id, k).  Replicates can therefore be assigned
/// one stream each and produce identical results regardless of scheduling,
/// and two runs with the same address are bitwise identical on any platform.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Number of draws consumed so far (u01 and u64 each count as one).
  std::uint64_t draws() const { return draws_; }

  std::uint64_t next_u64() {
    const std::uint64_t index = draws_++;
    if (index % 2 == 0) {
      block_ = philox(index / 2);
      return static_cast<std::uint64_t>(block_[0]) |
             (static_cast<std::uint64_t>(block_[1]) << 32);
    }
    return static_cast<std::uint64_t>(block_[2]) |
           (static_cast<std::uint64_t>(block_[3]) << 32);
  }

  /// Uniform draw on [0, 1) with 53 random bits.
  double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::array<std::uint32_t, 4> philox(std::uint64_t block_index) const {
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    std::uint32_t k0 = static_cast<std::uint32_t>(seed_);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed_ >> 32);
    std::array<std::uint32_t, 4> c = {
        static_cast<std::uint32_t>(block_index),
        static_cast<std::uint32_t>(block_index >> 32),
        static_cast<std::uint32_t>(stream_id_),
        static_cast<std::uint32_t>(stream_id_ >> 32)};
    for (int round = 0; round < 10; ++round) {
      if (round != 0) {
        k0 += kWeyl0;
        k1 += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
      c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0,
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1,
           static_cast<std::uint32_t>(p0)};
    }
    return c;
  }

  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t draws_ = 0;
  std::array<std::uint32_t, 4> block_{};
};

/// Derives a decorrelated seed from (seed, salt); splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + (salt + 1) * 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace randrk
