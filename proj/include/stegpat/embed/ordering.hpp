#pragma once

#include <algorithm>
#include <cstdint>
#include <span>

#include "stegpat/embed/modulated.hpp"
#include "stegpat/embed/spec.hpp"
#include "stegpat/permutation.hpp"

// Sequence Modulation / Message Ordering. The flow is cut into consecutive
// windows of n packets; a window carries floor(log2(n!)) bits as the rank of
// the order its packets appear in, relative to ascending sequence numbers.
// Timestamps belong to positions and never move.

namespace stegpat::ordering {

inline bool distinct_seqs(std::span<const Packet> window) {
  std::vector<std::uint64_t> seqs;
  for (const auto& p : window) seqs.push_back(p.seq);
  std::sort(seqs.begin(), seqs.end());
  return std::adjacent_find(seqs.begin(), seqs.end()) == seqs.end();
}

/// Start indices of the windows that can carry a permutation.
inline std::vector<std::size_t> windows(const PacketFlow& flow, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w + n <= flow.packets.size(); w += n)
    if (distinct_seqs(std::span(flow.packets).subspan(w, n))) out.push_back(w);
  return out;
}

inline std::size_t capacity(const PacketFlow& flow, const OrderingParams& p) {
  check(p);
  const unsigned b = permutation_capacity_bits(p.reorder_window);
  return b == 0 ? 0 : windows(flow, p.reorder_window).size() * b;
}

inline Modulated<PacketFlow> modulate(const PacketFlow& flow, std::span<const std::uint8_t> bits,
                                      const OrderingParams& p) {
  require_capacity(bits.size(), capacity(flow, p));
  Modulated<PacketFlow> out{flow, {}};
  const std::size_t n = p.reorder_window;
  const unsigned b = permutation_capacity_bits(n);
  if (bits.empty()) return out;
  const BitString symbols = padded(bits, b);
  std::size_t next = 0;
  for (std::size_t w : windows(flow, n)) {
    if (next >= symbols.size()) break;
    const std::uint64_t rank = read_bits(symbols, next, b);
    next += b;
    std::vector<Packet> sorted(flow.packets.begin() + static_cast<std::ptrdiff_t>(w),
                               flow.packets.begin() + static_cast<std::ptrdiff_t>(w + n));
    std::sort(sorted.begin(), sorted.end(), [](const Packet& a, const Packet& c) { return a.seq < c.seq; });
    const auto perm = unrank_permutation(rank, n);
    for (std::size_t j = 0; j < n; ++j) {
      Packet moved = sorted[perm[j]];
      moved.ts_us = flow.packets[w + j].ts_us;
      if (!(moved == flow.packets[w + j]))
        out.touched.push_back({ModifiableObjectKind::Element, w + j, "packet", moved.seq, {}});
      out.stego.packets[w + j] = std::move(moved);
    }
  }
  return out;
}

inline BitString demodulate(const PacketFlow& flow, const OrderingParams& p) {
  check(p);
  const std::size_t n = p.reorder_window;
  const unsigned b = permutation_capacity_bits(n);
  BitString bits;
  if (b == 0) return bits;
  for (std::size_t w : windows(flow, n)) {
    if (bits.size() >= kMaxDecodedBits) break;
    std::vector<std::uint64_t> seqs;
    for (std::size_t j = 0; j < n; ++j) seqs.push_back(flow.packets[w + j].seq);
    std::vector<std::uint64_t> sorted = seqs;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> perm;
    for (auto s : seqs)
      perm.push_back(static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin()));
    const std::uint64_t rank = rank_permutation(perm);
    if (b < 64 && rank >= (std::uint64_t{1} << b)) break;
    append_bits(bits, rank, b);
  }
  return bits;
}

}  // namespace stegpat::ordering
