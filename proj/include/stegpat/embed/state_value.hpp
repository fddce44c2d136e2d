#pragma once

#include <cstdint>
#include <span>

#include "stegpat/embed/modulated.hpp"
#include "stegpat/embed/spec.hpp"
#include "stegpat/prng.hpp"

// EN4 and its sub-patterns over header fields and pixels.

namespace stegpat {

/// 16-bit ones' complement checksum (RFC 1071) of a byte string, big-endian
/// words, odd trailing byte padded with zero.
inline std::uint16_t internet_checksum(std::span<const std::uint8_t> data) {
  std::uint32_t sum = 0;
  for (std::size_t i = 0; i < data.size(); i += 2) {
    const std::uint32_t hi = data[i];
    const std::uint32_t lo = i + 1 < data.size() ? data[i + 1] : 0;
    sum += (hi << 8) | lo;
    sum = (sum & 0xFFFF) + (sum >> 16);
  }
  return static_cast<std::uint16_t>(~sum & 0xFFFF);
}

namespace state_value {

namespace detail {

// A writable value of a given width plus what the checksum test needs.
struct Slot {
  std::uint64_t* value;
  unsigned width;
  std::size_t index;
  std::string feature;
  const std::vector<std::uint8_t>* payload = nullptr;
};

inline std::uint64_t low_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

inline std::uint64_t seed_of(const StateValueParams& p) {
  if (!p.prng_seed || *p.prng_seed == 0)
    throw Error(Errc::InvalidParams, "random state/value modulation needs a nonzero prng_seed");
  return *p.prng_seed;
}

template <typename FlowRef>
auto field_slots(FlowRef& flow, const CarrierBinding& b, StateValueMode mode) {
  if (b.target != CarrierBinding::Target::Field)
    throw Error(Errc::UnknownBinding, "state/value modulation on a flow needs a field:<name> binding");
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < flow.packets.size(); ++i) {
    auto& pkt = flow.packets[i];
    auto it = pkt.fields.find(b.name);
    if (it == pkt.fields.end()) continue;
    auto& f = it->second;
    if (mode == StateValueMode::ReservedUnused && !f.reserved)
      throw Error(Errc::InvalidParams, "field '" + b.name + "' is not reserved in packet " + std::to_string(i));
    if (mode == StateValueMode::Blind && f.width != 16)
      throw Error(Errc::InvalidParams, "blind corruption needs a 16-bit checksum field, '" + b.name + "' has width " +
                                           std::to_string(f.width));
    slots.push_back({const_cast<std::uint64_t*>(&f.value), f.width, i, b.name, &pkt.payload});
  }
  if (slots.empty() && !flow.packets.empty())
    throw Error(Errc::UnknownBinding, "no packet carries field '" + b.name + "'");
  return slots;
}

inline void require_pixels(const CarrierBinding& b, StateValueMode mode) {
  if (b.target != CarrierBinding::Target::Default && b.target != CarrierBinding::Target::Pixels)
    throw Error(Errc::UnknownBinding, "state/value modulation on an image acts on pixels, not '" + format_binding(b) + "'");
  if (mode != StateValueMode::Plain && mode != StateValueMode::Random)
    throw Error(Errc::UnsupportedCarrier, std::string(to_string(mode)) + " state/value modulation needs a packet flow");
}

inline std::size_t slot_capacity(const std::vector<Slot>& slots, StateValueMode mode) {
  if (mode == StateValueMode::Plain || mode == StateValueMode::Blind) return slots.size();
  std::size_t n = 0;
  for (const auto& s : slots) n += s.width;
  return n;
}

/// Writes `bits` into the slots, returning the indices of slots written.
inline std::vector<std::size_t> write_slots(std::vector<Slot>& slots, std::span<const std::uint8_t> bits,
                                            StateValueMode mode, const StateValueParams& p) {
  std::vector<std::size_t> written;
  switch (mode) {
    case StateValueMode::Plain:
      for (std::size_t i = 0; i < bits.size(); ++i) {
        *slots[i].value = (*slots[i].value & ~std::uint64_t{1}) | bits[i];
        written.push_back(i);
      }
      break;
    case StateValueMode::Blind:
      for (std::size_t i = 0; i < bits.size(); ++i) {
        const std::uint16_t sum = internet_checksum(*slots[i].payload);
        *slots[i].value = bits[i] ? static_cast<std::uint16_t>(~sum) : sum;
        written.push_back(i);
      }
      break;
    case StateValueMode::ReservedUnused:
    case StateValueMode::Random: {
      std::optional<Keystream> ks;
      if (mode == StateValueMode::Random) ks.emplace(seed_of(p));
      std::size_t pos = 0;
      for (std::size_t i = 0; i < slots.size() && pos < bits.size(); ++i) {
        std::uint64_t v = 0;
        for (unsigned k = 0; k < slots[i].width; ++k, ++pos) {
          std::uint8_t bit = pos < bits.size() ? bits[pos] : 0;
          if (ks) bit ^= ks->next_bit();
          v = (v << 1) | bit;
        }
        *slots[i].value = v;
        written.push_back(i);
      }
      break;
    }
  }
  return written;
}

inline BitString read_slots(const std::vector<Slot>& slots, StateValueMode mode, const StateValueParams& p) {
  BitString bits;
  switch (mode) {
    case StateValueMode::Plain:
      for (const auto& s : slots) {
        if (bits.size() >= kMaxDecodedBits) break;
        bits.push_back(static_cast<std::uint8_t>(*s.value & 1));
      }
      break;
    case StateValueMode::Blind:
      for (const auto& s : slots) {
        if (bits.size() >= kMaxDecodedBits) break;
        bits.push_back(*s.value == internet_checksum(*s.payload) ? 0 : 1);
      }
      break;
    case StateValueMode::ReservedUnused:
    case StateValueMode::Random: {
      std::optional<Keystream> ks;
      if (mode == StateValueMode::Random) ks.emplace(seed_of(p));
      for (const auto& s : slots) {
        if (bits.size() >= kMaxDecodedBits) break;
        for (unsigned k = s.width; k-- > 0;) {
          std::uint8_t bit = static_cast<std::uint8_t>((*s.value >> k) & 1);
          if (ks) bit ^= ks->next_bit();
          bits.push_back(bit);
        }
      }
      break;
    }
  }
  return bits;
}

}  // namespace detail

inline std::size_t capacity(const PacketFlow& flow, const CarrierBinding& b, StateValueMode mode,
                            const StateValueParams& p) {
  if (mode == StateValueMode::Random) detail::seed_of(p);
  return detail::slot_capacity(detail::field_slots(flow, b, mode), mode);
}

inline std::size_t capacity(const ImageBuffer& img, const CarrierBinding& b, StateValueMode mode,
                            const StateValueParams& p) {
  detail::require_pixels(b, mode);
  if (mode == StateValueMode::Random) detail::seed_of(p);
  return mode == StateValueMode::Plain ? img.pixels.size() : 8 * img.pixels.size();
}

inline Modulated<PacketFlow> modulate(const PacketFlow& flow, std::span<const std::uint8_t> bits,
                                      const CarrierBinding& b, StateValueMode mode, const StateValueParams& p) {
  require_capacity(bits.size(), capacity(flow, b, mode, p));
  Modulated<PacketFlow> out{flow, {}};
  auto slots = detail::field_slots(out.stego, b, mode);
  for (std::size_t i : detail::write_slots(slots, bits, mode, p))
    out.touched.push_back({ModifiableObjectKind::StateValue, slots[i].index, slots[i].feature, *slots[i].value,
                           slots[i].width});
  return out;
}

inline Modulated<ImageBuffer> modulate(const ImageBuffer& img, std::span<const std::uint8_t> bits,
                                       const CarrierBinding& b, StateValueMode mode, const StateValueParams& p) {
  require_capacity(bits.size(), capacity(img, b, mode, p));
  std::vector<std::uint64_t> values(img.pixels.begin(), img.pixels.end());
  std::vector<detail::Slot> slots;
  for (std::size_t i = 0; i < values.size(); ++i) slots.push_back({&values[i], 8, i, "pixel"});
  Modulated<ImageBuffer> out{img, {}};
  for (std::size_t i : detail::write_slots(slots, bits, mode, p)) {
    out.stego.pixels[i] = static_cast<std::uint8_t>(values[i]);
    out.touched.push_back({ModifiableObjectKind::StateValue, i, "pixel", values[i], 8});
  }
  return out;
}

inline BitString demodulate(const PacketFlow& flow, const CarrierBinding& b, StateValueMode mode,
                            const StateValueParams& p) {
  return detail::read_slots(detail::field_slots(flow, b, mode), mode, p);
}

inline BitString demodulate(const ImageBuffer& img, const CarrierBinding& b, StateValueMode mode,
                            const StateValueParams& p) {
  detail::require_pixels(b, mode);
  std::vector<std::uint64_t> values(img.pixels.begin(), img.pixels.end());
  std::vector<detail::Slot> slots;
  for (std::size_t i = 0; i < values.size(); ++i) slots.push_back({&values[i], 8, i, "pixel"});
  return detail::read_slots(slots, mode, p);
}

}  // namespace state_value

}  // namespace stegpat
