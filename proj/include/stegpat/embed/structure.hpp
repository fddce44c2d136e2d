#pragma once

#include <cstdint>
#include <span>

#include "stegpat/embed/modulated.hpp"
#include "stegpat/embed/spec.hpp"

// EN5.1 (size) and EN5.2 (character features).

namespace stegpat {

namespace size_mod {

/// Smallest s' >= s whose residue mod 2q lies in the half selected by `bit`.
inline std::uint64_t padded_size(std::uint64_t s, std::uint8_t bit, std::uint64_t q) {
  const std::uint64_t r = s % (2 * q);
  if (bit) return r >= q ? s : s + (q - r);
  return r < q ? s : s + (2 * q - r);
}

inline std::uint8_t size_bit(std::uint64_t s, std::uint64_t q) { return s % (2 * q) >= q ? 1 : 0; }

inline void require_binding(const CarrierBinding& b, CarrierBinding::Target natural) {
  if (b.target != CarrierBinding::Target::Default && b.target != natural)
    throw Error(Errc::UnknownBinding, "size modulation acts on '" + format_binding(CarrierBinding::of(natural)) +
                                          "', not '" + format_binding(b) + "'");
}

inline std::size_t capacity(const PacketFlow& flow, const CarrierBinding& b, const SizeParams& p) {
  check(p);
  require_binding(b, CarrierBinding::Target::Payload);
  return flow.packets.size();
}

inline std::size_t capacity(const TextDocument& doc, const CarrierBinding& b, const SizeParams& p) {
  check(p);
  require_binding(b, CarrierBinding::Target::Lines);
  return line_ranges(doc).size();
}

inline Modulated<PacketFlow> modulate(const PacketFlow& flow, std::span<const std::uint8_t> bits,
                                      const CarrierBinding& b, const SizeParams& p) {
  require_capacity(bits.size(), capacity(flow, b, p));
  Modulated<PacketFlow> out{flow, {}};
  for (std::size_t i = 0; i < bits.size(); ++i) {
    auto& payload = out.stego.packets[i].payload;
    payload.resize(padded_size(payload.size(), bits[i], p.quantum), 0);
    out.touched.push_back({ModifiableObjectKind::Feature, i, "payload", payload.size(), {}});
  }
  return out;
}

/// Lines are padded with trailing spaces; the line break stays last.
inline Modulated<TextDocument> modulate(const TextDocument& doc, std::span<const std::uint8_t> bits,
                                        const CarrierBinding& b, const SizeParams& p) {
  require_capacity(bits.size(), capacity(doc, b, p));
  const auto lines = line_ranges(doc);
  Modulated<TextDocument> out{{}, {}};
  auto& chars = out.stego.chars;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto [begin, end] = lines[i];
    chars.insert(chars.end(), doc.chars.begin() + static_cast<std::ptrdiff_t>(begin),
                 doc.chars.begin() + static_cast<std::ptrdiff_t>(end));
    if (i < bits.size()) {
      const std::uint64_t len = end - begin, target = padded_size(len, bits[i], p.quantum);
      chars.insert(chars.end(), target - len, StyledChar{U' ', {}});
      out.touched.push_back({ModifiableObjectKind::Feature, i, "line_length", target, {}});
    }
    if (end < doc.chars.size()) chars.push_back(doc.chars[end]);
  }
  return out;
}

inline BitString demodulate(const PacketFlow& flow, const CarrierBinding& b, const SizeParams& p) {
  check(p);
  require_binding(b, CarrierBinding::Target::Payload);
  BitString bits;
  for (const auto& pkt : flow.packets) {
    if (bits.size() >= kMaxDecodedBits) break;
    bits.push_back(size_bit(pkt.payload.size(), p.quantum));
  }
  return bits;
}

inline BitString demodulate(const TextDocument& doc, const CarrierBinding& b, const SizeParams& p) {
  check(p);
  require_binding(b, CarrierBinding::Target::Lines);
  BitString bits;
  for (auto [begin, end] : line_ranges(doc)) {
    if (bits.size() >= kMaxDecodedBits) break;
    bits.push_back(size_bit(end - begin, p.quantum));
  }
  return bits;
}

}  // namespace size_mod

namespace char_feature {

inline bool case_carrier(const StyledChar& c) {
  return is_ascii_letter(c.codepoint) && !c.style.upper_lower_significant;
}

inline bool color_carrier(const StyledChar& c) { return !is_space(c.codepoint); }

inline void require_binding(const CarrierBinding& b, const CharFeatureParams& p) {
  using T = CarrierBinding::Target;
  const T natural = p.feature == CharFeature::Case ? T::Case : T::Color;
  if (b.target != T::Default && b.target != natural)
    throw Error(Errc::UnknownBinding, "character feature '" + format_binding(CarrierBinding::of(natural)) +
                                          "' cannot act on '" + format_binding(b) + "'");
}

inline bool carrier(const StyledChar& c, const CharFeatureParams& p) {
  return p.feature == CharFeature::Case ? case_carrier(c) : color_carrier(c);
}

inline std::size_t capacity(const TextDocument& doc, const CarrierBinding& b, const CharFeatureParams& p) {
  require_binding(b, p);
  std::size_t n = 0;
  for (const auto& c : doc.chars) n += carrier(c, p) ? 1 : 0;
  return n;
}

inline Modulated<TextDocument> modulate(const TextDocument& doc, std::span<const std::uint8_t> bits,
                                        const CarrierBinding& b, const CharFeatureParams& p) {
  require_capacity(bits.size(), capacity(doc, b, p));
  Modulated<TextDocument> out{doc, {}};
  std::size_t next = 0;
  for (std::size_t i = 0; i < out.stego.chars.size() && next < bits.size(); ++i) {
    auto& c = out.stego.chars[i];
    if (!carrier(c, p)) continue;
    const std::uint8_t bit = bits[next++];
    if (p.feature == CharFeature::Case) {
      const char32_t lower = is_ascii_upper(c.codepoint) ? c.codepoint + 32 : c.codepoint;
      c.codepoint = bit ? lower - 32 : lower;
      out.touched.push_back({ModifiableObjectKind::Feature, i, "case", bit, 1});
    } else {
      c.style.color_tag = bit;
      out.touched.push_back({ModifiableObjectKind::Feature, i, "color", bit, {}});
    }
  }
  return out;
}

inline BitString demodulate(const TextDocument& doc, const CarrierBinding& b, const CharFeatureParams& p) {
  require_binding(b, p);
  BitString bits;
  for (const auto& c : doc.chars) {
    if (bits.size() >= kMaxDecodedBits) break;
    if (!carrier(c, p)) continue;
    if (p.feature == CharFeature::Case) {
      bits.push_back(is_ascii_upper(c.codepoint) ? 1 : 0);
    } else {
      if (!c.style.color_tag || *c.style.color_tag > 1) break;
      bits.push_back(*c.style.color_tag);
    }
  }
  return bits;
}

}  // namespace char_feature

}  // namespace stegpat
