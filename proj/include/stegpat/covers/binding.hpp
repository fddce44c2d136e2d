#pragma once

#include <string>
#include <string_view>

#include "stegpat/covers/utf8.hpp"
#include "stegpat/error.hpp"

namespace stegpat {

/// Which part of a carrier a pattern acts on. Textual form is used by the CLI
/// and by parameter files: "field:ttl", "option:A", "char:*", "payload", ...
struct CarrierBinding {
  enum class Target {
    Default,   // the pattern's natural target
    Packets,   // flow elements
    Events,    // flow events
    Field,     // named header field
    Option,    // option tag used as a marker
    Payload,   // packet payload size
    Pixels,    // image pixel values
    Chars,     // text characters
    Marker,    // a marker character in text
    Spaces,    // runs of spaces in text
    Lines,     // text line lengths
    Case,      // letter case
    Color,     // character colour tag
  };

  Target target = Target::Default;
  std::string name;        // field name or option tag
  char32_t marker = 0;     // for Target::Marker

  friend bool operator==(const CarrierBinding&, const CarrierBinding&) = default;

  static CarrierBinding field(std::string n) { return {Target::Field, std::move(n), 0}; }
  static CarrierBinding option(std::string n) { return {Target::Option, std::move(n), 0}; }
  static CarrierBinding marker_char(char32_t c) { return {Target::Marker, {}, c}; }
  static CarrierBinding of(Target t) { return {t, {}, 0}; }
};

inline CarrierBinding parse_binding(std::string_view s) {
  using T = CarrierBinding::Target;
  auto with_arg = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (s.size() > prefix.size() && s.substr(0, prefix.size()) == prefix) return s.substr(prefix.size());
    return std::nullopt;
  };
  if (s.empty() || s == "default") return {};
  if (auto a = with_arg("field:")) return CarrierBinding::field(std::string(*a));
  if (auto a = with_arg("option:")) return CarrierBinding::option(std::string(*a));
  if (auto a = with_arg("char:")) {
    const auto cps = decode_utf8(*a);
    if (cps.size() != 1) throw Error(Errc::UnknownBinding, "char: binding needs exactly one character");
    return CarrierBinding::marker_char(cps.front());
  }
  static constexpr std::pair<std::string_view, T> kPlain[] = {
      {"packets", T::Packets}, {"events", T::Events}, {"payload", T::Payload}, {"pixels", T::Pixels},
      {"chars", T::Chars},     {"spaces", T::Spaces}, {"lines", T::Lines},     {"case", T::Case},
      {"color", T::Color}};
  for (const auto& [text, target] : kPlain)
    if (s == text) return CarrierBinding::of(target);
  throw Error(Errc::UnknownBinding, "unrecognised binding '" + std::string(s) + "'");
}

inline std::string format_binding(const CarrierBinding& b) {
  using T = CarrierBinding::Target;
  switch (b.target) {
    case T::Default: return "default";
    case T::Packets: return "packets";
    case T::Events: return "events";
    case T::Field: return "field:" + b.name;
    case T::Option: return "option:" + b.name;
    case T::Payload: return "payload";
    case T::Pixels: return "pixels";
    case T::Chars: return "chars";
    case T::Marker: return "char:" + encode_utf8(std::u32string(1, b.marker));
    case T::Spaces: return "spaces";
    case T::Lines: return "lines";
    case T::Case: return "case";
    case T::Color: return "color";
  }
  return "?";
}

}  // namespace stegpat
