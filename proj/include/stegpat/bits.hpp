#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stegpat/error.hpp"

namespace stegpat {

/// One bit per byte, values 0 or 1. Bit order is MSB-first everywhere.
using BitString = std::vector<std::uint8_t>;

inline constexpr std::size_t kFrameBits = 16;
inline constexpr std::size_t kMaxMessageBits = 0xFFFF;

/// Appends the low `width` bits of `value`, most significant first.
inline void append_bits(BitString& out, std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) out.push_back(static_cast<std::uint8_t>((value >> i) & 1U));
}

inline std::uint64_t read_bits(std::span<const std::uint8_t> bits, std::size_t offset, unsigned width) {
  std::uint64_t value = 0;
  for (unsigned i = 0; i < width; ++i) value = (value << 1) | (bits[offset + i] & 1U);
  return value;
}

struct SecretMessage {
  BitString bits;

  friend bool operator==(const SecretMessage&, const SecretMessage&) = default;

  /// 16-bit big-endian bit count followed by the payload.
  BitString framed() const {
    if (bits.size() > kMaxMessageBits)
      throw Error(Errc::InvalidParams, "message longer than 65535 bits");
    BitString out;
    out.reserve(kFrameBits + bits.size());
    append_bits(out, bits.size(), kFrameBits);
    out.insert(out.end(), bits.begin(), bits.end());
    return out;
  }

  std::size_t framed_size() const { return kFrameBits + bits.size(); }
};

/// Reads the length frame and the payload from a decoded bit stream.
/// Trailing bits (padding, untouched carrier regions) are ignored.
inline SecretMessage deframe(std::span<const std::uint8_t> stream) {
  if (stream.size() < kFrameBits)
    throw Error(Errc::FrameError, "stream of " + std::to_string(stream.size()) +
                                      " bits cannot hold the 16-bit length frame");
  const auto length = static_cast<std::size_t>(read_bits(stream, 0, kFrameBits));
  if (length > stream.size() - kFrameBits)
    throw Error(Errc::FrameError, "declared length " + std::to_string(length) + " exceeds the " +
                                      std::to_string(stream.size() - kFrameBits) +
                                      " available bits");
  return SecretMessage{BitString(stream.begin() + kFrameBits,
                                 stream.begin() + static_cast<std::ptrdiff_t>(kFrameBits + length))};
}

inline void pad_to_multiple(BitString& bits, std::size_t symbol_bits) {
  if (symbol_bits == 0) return;
  while (bits.size() % symbol_bits != 0) bits.push_back(0);
}

/// "0xAB" -> 10101011. The prefix is mandatory; "0x" alone is the empty message.
inline SecretMessage parse_hex_message(std::string_view text) {
  if (text.size() < 2 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
    throw Error(Errc::InvalidParams, "message must be 0x-prefixed hex");
  SecretMessage msg;
  for (char c : text.substr(2)) {
    unsigned nibble = 0;
    if (c >= '0' && c <= '9') nibble = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') nibble = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') nibble = static_cast<unsigned>(c - 'A' + 10);
    else throw Error(Errc::InvalidParams, std::string("invalid hex digit '") + c + "'");
    append_bits(msg.bits, nibble, 4);
  }
  if (msg.bits.size() > kMaxMessageBits) throw Error(Errc::InvalidParams, "message longer than 65535 bits");
  return msg;
}

/// Hex when the bit count is a multiple of four, otherwise "0b" followed by the bits.
inline std::string format_message(const SecretMessage& msg) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  if (msg.bits.size() % 4 == 0) {
    out = "0x";
    for (std::size_t i = 0; i < msg.bits.size(); i += 4) out.push_back(kDigits[read_bits(msg.bits, i, 4)]);
  } else {
    out = "0b";
    for (auto b : msg.bits) out.push_back(b ? '1' : '0');
  }
  return out;
}

inline BitString bits_from_string(std::string_view s) {
  BitString out;
  for (char c : s) {
    if (c == '0' || c == '1') out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

}  // namespace stegpat
