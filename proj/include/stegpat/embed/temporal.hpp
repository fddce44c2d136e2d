#pragma once

#include <cstdint>
#include <span>

#include "stegpat/embed/modulated.hpp"
#include "stegpat/embed/spec.hpp"

// Temporal codecs. They rewrite timestamps and nothing else.

namespace stegpat {

namespace detail {

/// Re-times packets [from, end) so that they keep their original spacing
/// behind packet from-1.
inline void carry_spacing(std::vector<Packet>& out, const std::vector<Packet>& orig, std::size_t from,
                          std::vector<ObjectHandle>& touched) {
  for (std::size_t j = from; j < out.size(); ++j) {
    if (j == 0) continue;
    out[j].ts_us = out[j - 1].ts_us + (orig[j].ts_us - orig[j - 1].ts_us);
    if (out[j].ts_us != orig[j].ts_us)
      touched.push_back({ModifiableObjectKind::Element, j, "packet", out[j].seq, {}});
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ET1: one bit per inter-packet gap.
namespace interval {

inline std::size_t capacity(const PacketFlow& flow, const IntervalParams& p) {
  check(p);
  return flow.packets.empty() ? 0 : flow.packets.size() - 1;
}

/// Gap i becomes base_us (0) or base_us + delta_us (1). Packets after the last
/// modulated gap keep their original spacing.
inline Modulated<PacketFlow> modulate(const PacketFlow& flow, std::span<const std::uint8_t> bits,
                                      const IntervalParams& p) {
  require_capacity(bits.size(), capacity(flow, p));
  Modulated<PacketFlow> out{flow, {}};
  auto& pk = out.stego.packets;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const std::uint64_t gap = p.base_us + (bits[i] ? p.delta_us : 0);
    pk[i + 1].ts_us = pk[i].ts_us + gap;
    out.touched.push_back({ModifiableObjectKind::Interval, i, "gap", gap, {}});
  }
  detail::carry_spacing(pk, flow.packets, bits.size() + 1, out.touched);
  return out;
}

inline BitString demodulate(const PacketFlow& flow, const IntervalParams& p) {
  check(p);
  BitString bits;
  for (std::size_t i = 1; i < flow.packets.size() && bits.size() < kMaxDecodedBits; ++i) {
    const std::uint64_t gap = flow.packets[i].ts_us - flow.packets[i - 1].ts_us;
    // gap >= base + delta/2 without losing the half
    bits.push_back(2 * gap >= 2 * p.base_us + p.delta_us ? 1 : 0);
  }
  return bits;
}

}  // namespace interval

// ---------------------------------------------------------------------------
// ET1.1: one bit per time window, carried by how many packets fall into it.
namespace rate {

/// Worst case: every bit is a 1 and costs hi_rate packets.
inline std::size_t capacity(const PacketFlow& flow, const RateParams& p) {
  check(p);
  return flow.packets.size() / p.hi_rate;
}

inline std::size_t packets_needed(std::span<const std::uint8_t> bits, const RateParams& p) {
  std::size_t n = 0;
  for (auto b : bits) n += b ? p.hi_rate : p.lo_rate;
  return n;
}

inline Modulated<PacketFlow> modulate(const PacketFlow& flow, std::span<const std::uint8_t> bits,
                                      const RateParams& p) {
  check(p);
  if (flow.packets.empty() || packets_needed(bits, p) > flow.packets.size())
    throw CapacityError(bits.size(), capacity(flow, p));
  Modulated<PacketFlow> out{flow, {}};
  auto& pk = out.stego.packets;
  const std::uint64_t origin = flow.packets.front().ts_us;
  std::size_t idx = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    const std::uint32_t count = bits[k] ? p.hi_rate : p.lo_rate;
    const std::uint64_t spacing = p.window_us / count;
    for (std::uint32_t j = 0; j < count; ++j, ++idx) {
      pk[idx].ts_us = origin + k * p.window_us + j * spacing;
      if (pk[idx].ts_us != flow.packets[idx].ts_us)
        out.touched.push_back({ModifiableObjectKind::Element, idx, "packet", pk[idx].seq, {}});
    }
  }
  if (idx < pk.size() && idx > 0) {
    pk[idx].ts_us = origin + bits.size() * p.window_us;
    if (pk[idx].ts_us != flow.packets[idx].ts_us)
      out.touched.push_back({ModifiableObjectKind::Element, idx, "packet", pk[idx].seq, {}});
    detail::carry_spacing(pk, flow.packets, idx + 1, out.touched);
  }
  return out;
}

inline BitString demodulate(const PacketFlow& flow, const RateParams& p) {
  check(p);
  BitString bits;
  if (flow.packets.empty()) return bits;
  const std::uint64_t origin = flow.packets.front().ts_us;
  const std::uint64_t last_window = (flow.packets.back().ts_us - origin) / p.window_us;
  const std::size_t windows = static_cast<std::size_t>(std::min<std::uint64_t>(last_window + 1, kMaxDecodedBits));
  std::vector<std::uint64_t> counts(windows, 0);
  for (const auto& pkt : flow.packets) {
    const std::uint64_t w = (pkt.ts_us - origin) / p.window_us;
    if (w < windows) ++counts[w];
  }
  for (auto c : counts) bits.push_back(2 * c >= std::uint64_t{p.hi_rate} + p.lo_rate ? 1 : 0);
  return bits;
}

}  // namespace rate

// ---------------------------------------------------------------------------
// ET2: each flow event is moved into one of slots_per_symbol slots of its own
// frame; frame i spans [i*S*slot_us, (i+1)*S*slot_us). Only events are used.
namespace occurrence {

inline std::size_t capacity(const PacketFlow& flow, const OccurrenceParams& p) {
  check(p);
  return flow.events.size() * log2_exact(p.slots_per_symbol);
}

inline Modulated<PacketFlow> modulate(const PacketFlow& flow, std::span<const std::uint8_t> bits,
                                      const OccurrenceParams& p) {
  const unsigned b = log2_exact(p.slots_per_symbol);
  const BitString symbols = padded(bits, b);
  require_capacity(symbols.size(), capacity(flow, p));
  Modulated<PacketFlow> out{flow, {}};
  auto& ev = out.stego.events;
  const std::size_t n = symbols.size() / b;
  for (std::size_t i = 0; i < n; ++i) {
    const auto symbol = read_bits(symbols, i * b, b);
    ev[i].ts_us = (i * p.slots_per_symbol + symbol) * p.slot_us;
    out.touched.push_back({ModifiableObjectKind::Event, i, "event", ev[i].ts_us, {}});
  }
  for (std::size_t j = n; j < ev.size(); ++j) {
    if (j == 0) continue;
    ev[j].ts_us = ev[j - 1].ts_us + (flow.events[j].ts_us - flow.events[j - 1].ts_us);
    if (ev[j].ts_us != flow.events[j].ts_us)
      out.touched.push_back({ModifiableObjectKind::Event, j, "event", ev[j].ts_us, {}});
  }
  return out;
}

/// Symbol of the slot a timestamp falls into, or nullopt when it lies outside frame i.
inline std::optional<std::uint64_t> slot_symbol(std::uint64_t ts_us, std::size_t frame, const OccurrenceParams& p) {
  const std::uint64_t slot = ts_us / p.slot_us;
  const std::uint64_t first = static_cast<std::uint64_t>(frame) * p.slots_per_symbol;
  if (slot < first || slot >= first + p.slots_per_symbol) return std::nullopt;
  return slot - first;
}

inline BitString demodulate(const PacketFlow& flow, const OccurrenceParams& p) {
  check(p);
  const unsigned b = log2_exact(p.slots_per_symbol);
  BitString bits;
  for (std::size_t i = 0; i < flow.events.size() && bits.size() < kMaxDecodedBits; ++i) {
    auto symbol = slot_symbol(flow.events[i].ts_us, i, p);
    if (!symbol) break;
    append_bits(bits, *symbol, b);
  }
  return bits;
}

}  // namespace occurrence

}  // namespace stegpat
