#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stegpat/bits.hpp"
#include "stegpat/covers/enumerate.hpp"
#include "stegpat/error.hpp"

namespace stegpat {

/// Output of a raw (unframed) modulation step.
template <typename Carrier>
struct Modulated {
  Carrier stego;
  std::vector<ObjectHandle> touched;
};

/// Decoders never need more than one maximal framed message.
inline constexpr std::size_t kMaxDecodedBits = kFrameBits + kMaxMessageBits;

inline void require_capacity(std::size_t needed, std::size_t available) {
  if (needed > available) throw CapacityError(needed, available);
}

/// Bits padded with zeros to whole symbols.
inline BitString padded(std::span<const std::uint8_t> bits, std::size_t symbol_bits) {
  BitString out(bits.begin(), bits.end());
  pad_to_multiple(out, symbol_bits);
  return out;
}

}  // namespace stegpat
