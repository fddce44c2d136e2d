#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>

#include "stegpat/embed/modulated.hpp"
#include "stegpat/embed/spec.hpp"

// EN1-EN3. None of these touch a timestamp: surviving packets keep theirs,
// inserted fragments inherit the timestamp of the packet they split.

namespace stegpat {

// ---------------------------------------------------------------------------
// EN1: sequence numbers are grouped as [seq_base + k*g, seq_base + (k+1)*g).
// A 1 bit suppresses the first element of its group.
namespace loss {

inline std::set<std::uint64_t> present_seqs(const PacketFlow& flow) {
  std::set<std::uint64_t> s;
  for (const auto& p : flow.packets) s.insert(p.seq);
  return s;
}

inline std::uint64_t group_start(std::size_t k, const LossParams& p) { return p.seq_base + k * p.group_size; }

/// Leading groups whose every sequence number is present in the cover.
inline std::size_t capacity(const PacketFlow& flow, const LossParams& p) {
  check(p);
  const auto seqs = present_seqs(flow);
  std::size_t k = 0;
  while (k < kMaxDecodedBits) {
    bool complete = true;
    for (std::uint64_t s = group_start(k, p); s < group_start(k + 1, p) && complete; ++s) complete = seqs.count(s) > 0;
    if (!complete) break;
    ++k;
  }
  return k;
}

inline Modulated<PacketFlow> modulate(const PacketFlow& flow, std::span<const std::uint8_t> bits,
                                      const LossParams& p) {
  require_capacity(bits.size(), capacity(flow, p));
  std::set<std::uint64_t> dropped;
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) dropped.insert(group_start(k, p));
  Modulated<PacketFlow> out{{{}, flow.events}, {}};
  for (std::size_t i = 0; i < flow.packets.size(); ++i) {
    if (dropped.count(flow.packets[i].seq))
      out.touched.push_back({ModifiableObjectKind::Element, i, "packet", flow.packets[i].seq, {}});
    else
      out.stego.packets.push_back(flow.packets[i]);
  }
  return out;
}

inline BitString demodulate(const PacketFlow& flow, const LossParams& p) {
  check(p);
  BitString bits;
  const auto seqs = present_seqs(flow);
  if (seqs.empty()) return bits;
  const std::uint64_t max_seq = *seqs.rbegin();
  for (std::size_t k = 0; group_start(k, p) <= max_seq && bits.size() < kMaxDecodedBits; ++k) {
    bool rest = true;
    for (std::uint64_t s = group_start(k, p) + 1; s < group_start(k + 1, p) && rest; ++s) rest = seqs.count(s) > 0;
    if (!rest) break;
    bits.push_back(seqs.count(group_start(k, p)) ? 0 : 1);
  }
  return bits;
}

}  // namespace loss

// ---------------------------------------------------------------------------
// EN2: a marker is moved to index `symbol` inside a window of `window`
// elements. Flows: the option list of each packet that carries the marker
// option. Text: each line that holds the marker character exactly once.
namespace positioning {

inline bool eligible(const Packet& p, const std::string& tag, std::uint32_t window) {
  return p.options.size() >= window && std::find(p.options.begin(), p.options.end(), tag) != p.options.end();
}

inline std::optional<std::pair<std::size_t, std::size_t>> marker_line(const TextDocument& doc,
                                                                      std::pair<std::size_t, std::size_t> line,
                                                                      char32_t marker, std::uint32_t window) {
  if (line.second - line.first < window) return std::nullopt;
  std::size_t count = 0;
  for (std::size_t i = line.first; i < line.second; ++i) count += doc.chars[i].codepoint == marker ? 1 : 0;
  if (count != 1) return std::nullopt;
  return line;
}

inline const std::string& option_tag(const CarrierBinding& b) {
  if (b.target != CarrierBinding::Target::Option || b.name.empty())
    throw Error(Errc::UnknownBinding, "positioning on a flow needs an option:<tag> marker binding");
  return b.name;
}

inline char32_t marker_char(const CarrierBinding& b) {
  if (b.target != CarrierBinding::Target::Marker)
    throw Error(Errc::UnknownBinding, "positioning on text needs a char:<c> marker binding");
  return b.marker;
}

inline std::size_t capacity(const PacketFlow& flow, const CarrierBinding& b, const PositioningParams& p) {
  check(p);
  const auto& tag = option_tag(b);
  std::size_t n = 0;
  for (const auto& pkt : flow.packets) n += eligible(pkt, tag, p.window) ? 1 : 0;
  return n * log2_exact(p.window);
}

inline std::size_t capacity(const TextDocument& doc, const CarrierBinding& b, const PositioningParams& p) {
  check(p);
  const char32_t m = marker_char(b);
  std::size_t n = 0;
  for (auto line : line_ranges(doc)) n += marker_line(doc, line, m, p.window) ? 1 : 0;
  return n * log2_exact(p.window);
}

inline Modulated<PacketFlow> modulate(const PacketFlow& flow, std::span<const std::uint8_t> bits,
                                      const CarrierBinding& b, const PositioningParams& p) {
  const unsigned w = log2_exact(p.window);
  const BitString symbols = padded(bits, w);
  require_capacity(symbols.size(), capacity(flow, b, p));
  const auto& tag = option_tag(b);
  Modulated<PacketFlow> out{flow, {}};
  std::size_t next = 0;
  for (std::size_t i = 0; i < out.stego.packets.size() && next < symbols.size(); ++i) {
    auto& opts = out.stego.packets[i].options;
    if (!eligible(out.stego.packets[i], tag, p.window)) continue;
    const auto symbol = static_cast<std::size_t>(read_bits(symbols, next, w));
    next += w;
    opts.erase(std::find(opts.begin(), opts.end(), tag));
    opts.insert(opts.begin() + static_cast<std::ptrdiff_t>(symbol), tag);
    out.touched.push_back({ModifiableObjectKind::Feature, i, "option:" + tag, symbol, {}});
  }
  return out;
}

inline Modulated<TextDocument> modulate(const TextDocument& doc, std::span<const std::uint8_t> bits,
                                        const CarrierBinding& b, const PositioningParams& p) {
  const unsigned w = log2_exact(p.window);
  const BitString symbols = padded(bits, w);
  require_capacity(symbols.size(), capacity(doc, b, p));
  const char32_t m = marker_char(b);
  Modulated<TextDocument> out{doc, {}};
  auto& chars = out.stego.chars;
  std::size_t next = 0;
  for (auto line : line_ranges(doc)) {
    if (next >= symbols.size()) break;
    if (!marker_line(doc, line, m, p.window)) continue;
    const auto symbol = static_cast<std::size_t>(read_bits(symbols, next, w));
    next += w;
    auto begin = chars.begin() + static_cast<std::ptrdiff_t>(line.first);
    auto end = chars.begin() + static_cast<std::ptrdiff_t>(line.second);
    auto at = std::find_if(begin, end, [&](const StyledChar& c) { return c.codepoint == m; });
    const StyledChar marker = *at;
    chars.erase(at);
    chars.insert(chars.begin() + static_cast<std::ptrdiff_t>(line.first + symbol), marker);
    out.touched.push_back({ModifiableObjectKind::Element, line.first + symbol, "marker", m, {}});
  }
  return out;
}

inline BitString demodulate(const PacketFlow& flow, const CarrierBinding& b, const PositioningParams& p) {
  check(p);
  const unsigned w = log2_exact(p.window);
  const auto& tag = option_tag(b);
  BitString bits;
  for (const auto& pkt : flow.packets) {
    if (bits.size() >= kMaxDecodedBits) break;
    if (!eligible(pkt, tag, p.window)) continue;
    const auto idx = static_cast<std::size_t>(std::find(pkt.options.begin(), pkt.options.end(), tag) - pkt.options.begin());
    if (idx >= p.window) break;
    append_bits(bits, idx, w);
  }
  return bits;
}

inline BitString demodulate(const TextDocument& doc, const CarrierBinding& b, const PositioningParams& p) {
  check(p);
  const unsigned w = log2_exact(p.window);
  const char32_t m = marker_char(b);
  BitString bits;
  for (auto line : line_ranges(doc)) {
    if (bits.size() >= kMaxDecodedBits) break;
    if (!marker_line(doc, line, m, p.window)) continue;
    std::size_t idx = 0;
    while (doc.chars[line.first + idx].codepoint != m) ++idx;
    if (idx >= p.window) break;
    append_bits(bits, idx, w);
  }
  return bits;
}

}  // namespace positioning

// ---------------------------------------------------------------------------
// EN3: an element appears n0 (bit 0) or n1 (bit 1) times. Text: runs of
// spaces. Flows: runs of consecutive packets sharing a sequence number, i.e.
// the fragments of one datagram.
namespace enumeration {

inline std::vector<std::pair<std::size_t, std::size_t>> seq_runs(const PacketFlow& flow) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < flow.packets.size();) {
    std::size_t j = i + 1;
    while (j < flow.packets.size() && flow.packets[j].seq == flow.packets[i].seq) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  return runs;
}

inline void require_binding(const CarrierBinding& b, CarrierBinding::Target natural) {
  if (b.target != CarrierBinding::Target::Default && b.target != natural)
    throw Error(Errc::UnknownBinding, "enumeration acts on '" + format_binding(CarrierBinding::of(natural)) +
                                          "', not '" + format_binding(b) + "'");
}

inline std::size_t capacity(const PacketFlow& flow, const CarrierBinding& b, const EnumerationParams& p) {
  check(p);
  require_binding(b, CarrierBinding::Target::Packets);
  return seq_runs(flow).size();
}

inline std::size_t capacity(const TextDocument& doc, const CarrierBinding& b, const EnumerationParams& p) {
  check(p);
  require_binding(b, CarrierBinding::Target::Spaces);
  return space_runs(doc).size();
}

/// Splits `payload` into `count` fragments; earlier fragments get the remainder.
inline std::vector<std::vector<std::uint8_t>> split_payload(const std::vector<std::uint8_t>& payload, std::size_t count) {
  std::vector<std::vector<std::uint8_t>> parts(count);
  const std::size_t base = payload.size() / count, extra = payload.size() % count;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    parts[i].assign(payload.begin() + static_cast<std::ptrdiff_t>(pos),
                    payload.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return parts;
}

inline Modulated<PacketFlow> modulate(const PacketFlow& flow, std::span<const std::uint8_t> bits,
                                      const CarrierBinding& b, const EnumerationParams& p) {
  require_capacity(bits.size(), capacity(flow, b, p));
  const auto runs = seq_runs(flow);
  Modulated<PacketFlow> out{{{}, flow.events}, {}};
  auto& pk = out.stego.packets;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto [begin, end] = runs[r];
    if (r >= bits.size()) {
      pk.insert(pk.end(), flow.packets.begin() + static_cast<std::ptrdiff_t>(begin),
                flow.packets.begin() + static_cast<std::ptrdiff_t>(end));
      continue;
    }
    std::vector<std::uint8_t> payload;
    for (std::size_t i = begin; i < end; ++i)
      payload.insert(payload.end(), flow.packets[i].payload.begin(), flow.packets[i].payload.end());
    const std::uint32_t count = bits[r] ? p.n1 : p.n0;
    out.touched.push_back({ModifiableObjectKind::Element, pk.size(), "fragments", count, {}});
    for (auto& part : split_payload(payload, count)) {
      Packet frag = flow.packets[begin];
      frag.payload = std::move(part);
      pk.push_back(std::move(frag));
    }
  }
  return out;
}

inline Modulated<TextDocument> modulate(const TextDocument& doc, std::span<const std::uint8_t> bits,
                                        const CarrierBinding& b, const EnumerationParams& p) {
  require_capacity(bits.size(), capacity(doc, b, p));
  const auto runs = space_runs(doc);
  Modulated<TextDocument> out{{}, {}};
  auto& chars = out.stego.chars;
  std::size_t pos = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto [begin, end] = runs[r];
    chars.insert(chars.end(), doc.chars.begin() + static_cast<std::ptrdiff_t>(pos),
                 doc.chars.begin() + static_cast<std::ptrdiff_t>(begin));
    if (r < bits.size()) {
      const std::uint32_t count = bits[r] ? p.n1 : p.n0;
      out.touched.push_back({ModifiableObjectKind::Element, chars.size(), "space_run", count, {}});
      chars.insert(chars.end(), count, doc.chars[begin]);
    } else {
      chars.insert(chars.end(), doc.chars.begin() + static_cast<std::ptrdiff_t>(begin),
                   doc.chars.begin() + static_cast<std::ptrdiff_t>(end));
    }
    pos = end;
  }
  chars.insert(chars.end(), doc.chars.begin() + static_cast<std::ptrdiff_t>(pos), doc.chars.end());
  return out;
}

template <typename Runs>
BitString decode_runs(const Runs& runs, const EnumerationParams& p) {
  BitString bits;
  for (const auto& [begin, end] : runs) {
    if (bits.size() >= kMaxDecodedBits) break;
    const std::size_t n = end - begin;
    if (n == p.n0) bits.push_back(0);
    else if (n == p.n1) bits.push_back(1);
    else break;
  }
  return bits;
}

inline BitString demodulate(const PacketFlow& flow, const CarrierBinding& b, const EnumerationParams& p) {
  check(p);
  require_binding(b, CarrierBinding::Target::Packets);
  return decode_runs(seq_runs(flow), p);
}

inline BitString demodulate(const TextDocument& doc, const CarrierBinding& b, const EnumerationParams& p) {
  check(p);
  require_binding(b, CarrierBinding::Target::Spaces);
  return decode_runs(space_runs(doc), p);
}

}  // namespace enumeration

}  // namespace stegpat
