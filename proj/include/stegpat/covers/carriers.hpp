#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "stegpat/covers/glossary.hpp"

namespace stegpat {

/// A header field with an explicit bit width. `reserved` marks fields the
/// protocol leaves unused.
struct FieldValue {
  std::uint64_t value = 0;
  unsigned width = 8;
  bool reserved = false;

  friend bool operator==(const FieldValue&, const FieldValue&) = default;
};

struct Packet {
  std::uint64_t ts_us = 0;  // microseconds since flow start
  std::uint64_t seq = 0;
  std::map<std::string, FieldValue> fields;
  std::vector<std::string> options;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const Packet&, const Packet&) = default;
};

enum class FlowEventKind { Connect, Disconnect, Send };

struct FlowEvent {
  std::uint64_t ts_us = 0;
  FlowEventKind kind = FlowEventKind::Send;

  friend bool operator==(const FlowEvent&, const FlowEvent&) = default;
};

struct PacketFlow {
  std::vector<Packet> packets;
  std::vector<FlowEvent> events;

  friend bool operator==(const PacketFlow&, const PacketFlow&) = default;
};

struct CharStyle {
  bool upper_lower_significant = false;  // case carries meaning; do not touch it
  std::optional<std::uint8_t> color_tag;

  friend bool operator==(const CharStyle&, const CharStyle&) = default;
};

struct StyledChar {
  char32_t codepoint = 0;
  CharStyle style;

  friend bool operator==(const StyledChar&, const StyledChar&) = default;
};

struct TextDocument {
  std::vector<StyledChar> chars;

  friend bool operator==(const TextDocument&, const TextDocument&) = default;

  static TextDocument from_ascii(std::string_view s) {
    TextDocument doc;
    for (char c : s) doc.chars.push_back({static_cast<char32_t>(static_cast<unsigned char>(c)), {}});
    return doc;
  }

  /// Codepoints below 128 only; anything else becomes '?'. For tests and diagnostics.
  std::string ascii() const {
    std::string out;
    for (const auto& c : chars) out.push_back(c.codepoint < 128 ? static_cast<char>(c.codepoint) : '?');
    return out;
  }
};

/// 8-bit grayscale, row-major.
struct ImageBuffer {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

using CoverObject = std::variant<PacketFlow, TextDocument, ImageBuffer>;

enum class CarrierType { Flow, Text, Image };

inline CarrierType carrier_type(const CoverObject& c) { return static_cast<CarrierType>(c.index()); }

inline const char* to_string(CarrierType t) {
  switch (t) {
    case CarrierType::Flow: return "flow";
    case CarrierType::Text: return "text";
    case CarrierType::Image: return "image";
  }
  return "?";
}

inline bool is_space(char32_t c) { return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r'; }

inline bool is_valid_scalar(char32_t c) { return c <= 0x10FFFF && (c < 0xD800 || c > 0xDFFF); }

/// Words split on whitespace, recomputed from the character sequence.
inline std::vector<std::u32string> tokens(const TextDocument& doc) {
  std::vector<std::u32string> out;
  std::u32string current;
  for (const auto& c : doc.chars) {
    if (is_space(c.codepoint)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c.codepoint);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

inline bool fits_width(std::uint64_t value, unsigned width) {
  return width >= 64 || value < (std::uint64_t{1} << width);
}

/// First invariant breach of a flow, if any.
inline std::optional<std::string> flow_violation(const PacketFlow& f) {
  for (std::size_t i = 0; i < f.packets.size(); ++i) {
    const auto& p = f.packets[i];
    if (i > 0 && p.ts_us < f.packets[i - 1].ts_us) return "packet timestamps decrease at packet " + std::to_string(i);
    for (const auto& [name, field] : p.fields) {
      if (field.width < 1 || field.width > 64) return "field '" + name + "' has width outside 1..64";
      if (!fits_width(field.value, field.width)) return "field '" + name + "' value does not fit its width";
    }
    std::set<std::string> tags(p.options.begin(), p.options.end());
    if (tags.size() != p.options.size()) return "duplicate option tag in packet " + std::to_string(i);
  }
  for (std::size_t i = 1; i < f.events.size(); ++i)
    if (f.events[i].ts_us < f.events[i - 1].ts_us) return "event timestamps decrease at event " + std::to_string(i);
  return std::nullopt;
}

inline std::optional<std::string> text_violation(const TextDocument& t) {
  for (std::size_t i = 0; i < t.chars.size(); ++i)
    if (!is_valid_scalar(t.chars[i].codepoint)) return "invalid Unicode scalar at index " + std::to_string(i);
  return std::nullopt;
}

inline std::optional<std::string> image_violation(const ImageBuffer& img) {
  if (img.width == 0 || img.height == 0) return "image dimensions must be positive";
  if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
    return "pixel count differs from width*height";
  return std::nullopt;
}

inline std::optional<std::string> cover_violation(const CoverObject& c) {
  return std::visit(
      [](const auto& v) -> std::optional<std::string> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PacketFlow>) return flow_violation(v);
        else if constexpr (std::is_same_v<T, TextDocument>) return text_violation(v);
        else return image_violation(v);
      },
      c);
}

}  // namespace stegpat
