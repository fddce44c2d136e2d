#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stegpat/covers/binding.hpp"
#include "stegpat/covers/carriers.hpp"
#include "stegpat/covers/glossary.hpp"
#include "stegpat/error.hpp"

namespace stegpat {

/// Address of one modifiable object inside a carrier. `index` is the position
/// in carrier order (packet, event, character, line or pixel index; for
/// intervals the index of the earlier endpoint).
struct ObjectHandle {
  ModifiableObjectKind kind = ModifiableObjectKind::Element;
  std::size_t index = 0;
  std::string feature;
  std::optional<std::uint64_t> value;
  std::optional<unsigned> width;

  friend bool operator==(const ObjectHandle&, const ObjectHandle&) = default;
};

inline bool is_ascii_letter(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }
inline bool is_ascii_upper(char32_t c) { return c >= U'A' && c <= U'Z'; }

/// Half-open [begin, end) character ranges of the lines of a document. A
/// document with k newlines has k+1 lines, the last one possibly empty.
inline std::vector<std::pair<std::size_t, std::size_t>> line_ranges(const TextDocument& doc) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < doc.chars.size(); ++i) {
    if (doc.chars[i].codepoint == U'\n') {
      out.emplace_back(begin, i);
      begin = i + 1;
    }
  }
  out.emplace_back(begin, doc.chars.size());
  return out;
}

/// Maximal runs of U+0020, as [begin, end) ranges.
inline std::vector<std::pair<std::size_t, std::size_t>> space_runs(const TextDocument& doc) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < doc.chars.size();) {
    if (doc.chars[i].codepoint != U' ') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < doc.chars.size() && doc.chars[j].codepoint == U' ') ++j;
    out.emplace_back(i, j);
    i = j;
  }
  return out;
}

namespace detail {

[[noreturn]] inline void unknown_binding(ModifiableObjectKind kind, const CarrierBinding& b, const char* carrier) {
  throw Error(Errc::UnknownBinding, "binding '" + format_binding(b) + "' does not address " +
                                        std::string(to_string(kind)) + " objects of a " + carrier);
}

inline std::vector<ObjectHandle> enumerate_flow(const PacketFlow& f, ModifiableObjectKind kind,
                                                const CarrierBinding& b) {
  using T = CarrierBinding::Target;
  using K = ModifiableObjectKind;
  std::vector<ObjectHandle> out;
  const bool packets = b.target == T::Default || b.target == T::Packets;
  switch (kind) {
    case K::Element:
      if (!packets) unknown_binding(kind, b, "flow");
      for (std::size_t i = 0; i < f.packets.size(); ++i) out.push_back({kind, i, "packet", f.packets[i].seq, {}});
      return out;
    case K::Interval:
      if (packets) {
        for (std::size_t i = 1; i < f.packets.size(); ++i)
          out.push_back({kind, i - 1, "gap", f.packets[i].ts_us - f.packets[i - 1].ts_us, {}});
      } else if (b.target == T::Events) {
        for (std::size_t i = 1; i < f.events.size(); ++i)
          out.push_back({kind, i - 1, "event_gap", f.events[i].ts_us - f.events[i - 1].ts_us, {}});
      } else {
        unknown_binding(kind, b, "flow");
      }
      return out;
    case K::Event:
      if (b.target != T::Default && b.target != T::Events) unknown_binding(kind, b, "flow");
      for (std::size_t i = 0; i < f.events.size(); ++i) out.push_back({kind, i, "event", f.events[i].ts_us, {}});
      return out;
    case K::Feature:
    case K::StateValue:
      if (b.target == T::Field) {
        bool any = false;
        for (std::size_t i = 0; i < f.packets.size(); ++i) {
          auto it = f.packets[i].fields.find(b.name);
          if (it == f.packets[i].fields.end()) continue;
          any = true;
          out.push_back({kind, i, b.name, it->second.value, it->second.width});
        }
        if (!any && !f.packets.empty())
          throw Error(Errc::UnknownBinding, "no packet carries field '" + b.name + "'");
      } else if (b.target == T::Option) {
        for (std::size_t i = 0; i < f.packets.size(); ++i) {
          const auto& opts = f.packets[i].options;
          for (std::size_t k = 0; k < opts.size(); ++k)
            if (opts[k] == b.name) out.push_back({kind, i, "option:" + b.name, k, {}});
        }
      } else if (b.target == T::Payload) {
        for (std::size_t i = 0; i < f.packets.size(); ++i)
          out.push_back({kind, i, "payload", f.packets[i].payload.size(), {}});
      } else {
        unknown_binding(kind, b, "flow");
      }
      return out;
  }
  return out;
}

inline std::vector<ObjectHandle> enumerate_text(const TextDocument& t, ModifiableObjectKind kind,
                                                const CarrierBinding& b) {
  using T = CarrierBinding::Target;
  using K = ModifiableObjectKind;
  std::vector<ObjectHandle> out;
  switch (kind) {
    case K::Element:
      if (b.target == T::Default || b.target == T::Chars) {
        for (std::size_t i = 0; i < t.chars.size(); ++i) out.push_back({kind, i, "char", t.chars[i].codepoint, {}});
      } else if (b.target == T::Spaces) {
        for (auto [begin, end] : space_runs(t)) out.push_back({kind, begin, "space_run", end - begin, {}});
      } else {
        unknown_binding(kind, b, "text");
      }
      return out;
    case K::Feature:
      if (b.target == T::Case) {
        for (std::size_t i = 0; i < t.chars.size(); ++i)
          if (is_ascii_letter(t.chars[i].codepoint))
            out.push_back({kind, i, "case", is_ascii_upper(t.chars[i].codepoint) ? 1u : 0u, 1});
      } else if (b.target == T::Color) {
        for (std::size_t i = 0; i < t.chars.size(); ++i) {
          if (is_space(t.chars[i].codepoint)) continue;
          const auto& tag = t.chars[i].style.color_tag;
          out.push_back({kind, i, "color", tag ? std::optional<std::uint64_t>(*tag) : std::nullopt, {}});
        }
      } else if (b.target == T::Lines) {
        const auto lines = line_ranges(t);
        for (std::size_t i = 0; i < lines.size(); ++i)
          out.push_back({kind, i, "line_length", lines[i].second - lines[i].first, {}});
      } else {
        unknown_binding(kind, b, "text");
      }
      return out;
    case K::StateValue:
      if (b.target == T::Default) {
        out.push_back({kind, 0, "char_count", t.chars.size(), {}});
      } else if (b.target == T::Chars) {
        for (std::size_t i = 0; i < t.chars.size(); ++i) out.push_back({kind, i, "codepoint", t.chars[i].codepoint, {}});
      } else {
        unknown_binding(kind, b, "text");
      }
      return out;
    case K::Event:
      if (b.target != T::Marker) unknown_binding(kind, b, "text");
      for (std::size_t i = 0; i < t.chars.size(); ++i)
        if (t.chars[i].codepoint == b.marker) out.push_back({kind, i, "occurrence", t.chars[i].codepoint, {}});
      return out;
    case K::Interval:
      unknown_binding(kind, b, "text");
  }
  return out;
}

inline std::vector<ObjectHandle> enumerate_image(const ImageBuffer& img, ModifiableObjectKind kind,
                                                 const CarrierBinding& b) {
  using T = CarrierBinding::Target;
  using K = ModifiableObjectKind;
  if (kind == K::Event || kind == K::Interval || (b.target != T::Default && b.target != T::Pixels))
    unknown_binding(kind, b, "image");
  std::vector<ObjectHandle> out;
  out.reserve(img.pixels.size());
  for (std::size_t i = 0; i < img.pixels.size(); ++i) out.push_back({kind, i, "pixel", img.pixels[i], 8});
  return out;
}

}  // namespace detail

/// Addressable objects of one kind, in carrier order. Pure and stable.
inline std::vector<ObjectHandle> enumerate_objects(const CoverObject& cover, ModifiableObjectKind kind,
                                                   const CarrierBinding& binding = {}) {
  return std::visit(
      [&](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, PacketFlow>) return detail::enumerate_flow(c, kind, binding);
        else if constexpr (std::is_same_v<C, TextDocument>) return detail::enumerate_text(c, kind, binding);
        else return detail::enumerate_image(c, kind, binding);
      },
      cover);
}

}  // namespace stegpat
