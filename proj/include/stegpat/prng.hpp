#pragma once

#include <cstdint>

namespace stegpat {

// xorshift64* (Vigna). Constants are the published ones; a zero state is a
// fixed point, so callers must reject seed 0.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

 private:
  std::uint64_t state_;
};

/// Bit-at-a-time view over the generator, MSB of each 64-bit word first.
class Keystream {
 public:
  explicit Keystream(std::uint64_t seed) : rng_(seed) {}

  std::uint8_t next_bit() {
    if (remaining_ == 0) {
      word_ = rng_.next();
      remaining_ = 64;
    }
    --remaining_;
    return static_cast<std::uint8_t>((word_ >> remaining_) & 1U);
  }

 private:
  XorShift64Star rng_;
  std::uint64_t word_ = 0;
  unsigned remaining_ = 0;
};

}  // namespace stegpat
