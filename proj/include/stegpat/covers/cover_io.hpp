#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "stegpat/covers/carriers.hpp"
#include "stegpat/covers/utf8.hpp"
#include "stegpat/error.hpp"

namespace stegpat {

namespace detail {

inline std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

inline std::vector<std::uint8_t> from_hex(std::string_view s, std::size_t line) {
  if (s.size() % 2) throw ParseError(line, "payload hex has odd length");
  auto nibble = [&](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw ParseError(line, std::string("payload has non-hex character '") + c + "'");
  };
  std::vector<std::uint8_t> out(s.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>((nibble(s[2 * i]) << 4) | nibble(s[2 * i + 1]));
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line = 1;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto current = text.substr(0, nl);
    if (!current.empty() && current.back() == '\r') current.remove_suffix(1);
    if (!current.empty()) fn(current, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
    ++line;
  }
}

inline nlohmann::json parse_json_line(std::string_view s, std::size_t line) {
  try {
    auto j = nlohmann::json::parse(s);
    if (!j.is_object()) throw ParseError(line, "expected a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line, e.what());
  }
}

inline std::uint64_t get_u64(const nlohmann::json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(line, std::string("missing '") + key + "'");
  if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0))
    throw ParseError(line, std::string("'") + key + "' must be a non-negative integer");
  return it->get<std::uint64_t>();
}

inline const char* event_name(FlowEventKind k) {
  switch (k) {
    case FlowEventKind::Connect: return "connect";
    case FlowEventKind::Disconnect: return "disconnect";
    case FlowEventKind::Send: return "send";
  }
  return "?";
}

inline Packet packet_from_json(const nlohmann::json& j, std::size_t line) {
  Packet p;
  p.ts_us = get_u64(j, "t", line);
  p.seq = get_u64(j, "seq", line);
  if (auto it = j.find("fields"); it != j.end()) {
    if (!it->is_object()) throw ParseError(line, "'fields' must be an object");
    for (auto f = it->begin(); f != it->end(); ++f) {
      if (!f->is_object()) throw ParseError(line, "field '" + f.key() + "' must be an object");
      FieldValue v;
      v.value = get_u64(*f, "v", line);
      v.width = static_cast<unsigned>(get_u64(*f, "w", line));
      if (auto r = f->find("r"); r != f->end()) {
        if (!r->is_boolean()) throw ParseError(line, "field '" + f.key() + "': 'r' must be a boolean");
        v.reserved = r->get<bool>();
      }
      if (v.width < 1 || v.width > 64) throw ParseError(line, "field '" + f.key() + "' width outside 1..64");
      if (!fits_width(v.value, v.width)) throw ParseError(line, "field '" + f.key() + "' value exceeds its width");
      p.fields.emplace(f.key(), v);
    }
  }
  if (auto it = j.find("opts"); it != j.end()) {
    if (!it->is_array()) throw ParseError(line, "'opts' must be an array");
    for (const auto& o : *it) {
      if (!o.is_string()) throw ParseError(line, "option tags must be strings");
      p.options.push_back(o.get<std::string>());
    }
  }
  if (auto it = j.find("payload"); it != j.end()) {
    if (!it->is_string()) throw ParseError(line, "'payload' must be a hex string");
    p.payload = from_hex(it->get_ref<const std::string&>(), line);
  }
  return p;
}

inline nlohmann::ordered_json packet_to_json(const Packet& p) {
  nlohmann::ordered_json j;
  j["t"] = p.ts_us;
  j["seq"] = p.seq;
  nlohmann::ordered_json fields = nlohmann::ordered_json::object();
  for (const auto& [name, v] : p.fields) fields[name] = {{"v", v.value}, {"w", v.width}, {"r", v.reserved}};
  j["fields"] = fields;
  j["opts"] = p.options;
  j["payload"] = to_hex(p.payload);
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Flow traces: JSON Lines, one packet or event per line.

inline PacketFlow load_flow(std::string_view text) {
  PacketFlow f;
  detail::for_each_line(text, [&](std::string_view s, std::size_t line) {
    const auto j = detail::parse_json_line(s, line);
    if (auto ev = j.find("event"); ev != j.end()) {
      FlowEvent e;
      e.ts_us = detail::get_u64(j, "t", line);
      const auto name = ev->is_string() ? ev->get<std::string>() : std::string();
      if (name == "connect") e.kind = FlowEventKind::Connect;
      else if (name == "disconnect") e.kind = FlowEventKind::Disconnect;
      else if (name == "send") e.kind = FlowEventKind::Send;
      else throw ParseError(line, "unknown event '" + name + "'");
      if (!f.events.empty() && e.ts_us < f.events.back().ts_us)
        throw ParseError(line, "NonMonotonicTimestamps: event time goes backwards");
      f.events.push_back(e);
      return;
    }
    auto p = detail::packet_from_json(j, line);
    if (!f.packets.empty() && p.ts_us < f.packets.back().ts_us)
      throw ParseError(line, "NonMonotonicTimestamps: packet time goes backwards");
    std::set<std::string> tags(p.options.begin(), p.options.end());
    if (tags.size() != p.options.size()) throw ParseError(line, "duplicate option tag");
    f.packets.push_back(std::move(p));
  });
  return f;
}

/// Packets and events merged by timestamp; on ties packets come first.
inline std::string save_flow(const PacketFlow& f) {
  std::string out;
  std::size_t pi = 0, ei = 0;
  while (pi < f.packets.size() || ei < f.events.size()) {
    const bool take_packet =
        ei == f.events.size() || (pi < f.packets.size() && f.packets[pi].ts_us <= f.events[ei].ts_us);
    if (take_packet) {
      out += detail::packet_to_json(f.packets[pi++]).dump();
    } else {
      nlohmann::ordered_json j;
      j["t"] = f.events[ei].ts_us;
      j["event"] = detail::event_name(f.events[ei].kind);
      out += j.dump();
      ++ei;
    }
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text: UTF-8 body plus an optional JSON sidecar listing non-default styles,
// {"styles":[{"i":3,"upper_lower_significant":true,"color_tag":1}, ...]}.

struct TextFiles {
  std::string text;
  std::string sidecar;  // empty when every character has the default style
};

inline TextDocument load_text(std::string_view utf8, std::string_view sidecar = {}) {
  TextDocument doc;
  for (auto cp : decode_utf8(utf8)) doc.chars.push_back({cp, {}});
  if (sidecar.empty()) return doc;

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(sidecar);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("style sidecar: ") + e.what());
  }
  if (!j.is_object() || !j.contains("styles") || !j["styles"].is_array())
    throw ParseError(0, "style sidecar: expected {\"styles\": [...]}");
  for (const auto& s : j["styles"]) {
    if (!s.is_object() || !s.contains("i") || !s["i"].is_number_unsigned())
      throw ParseError(0, "style sidecar: each entry needs an unsigned 'i'");
    const auto i = s["i"].get<std::size_t>();
    if (i >= doc.chars.size()) throw ParseError(0, "style sidecar: index " + std::to_string(i) + " out of range");
    auto& style = doc.chars[i].style;
    if (auto it = s.find("upper_lower_significant"); it != s.end()) {
      if (!it->is_boolean()) throw ParseError(0, "style sidecar: upper_lower_significant must be boolean");
      style.upper_lower_significant = it->get<bool>();
    }
    if (auto it = s.find("color_tag"); it != s.end()) {
      if (!it->is_number_unsigned() || it->get<std::uint64_t>() > 255)
        throw ParseError(0, "style sidecar: color_tag must be 0..255");
      style.color_tag = static_cast<std::uint8_t>(it->get<unsigned>());
    }
  }
  return doc;
}

inline TextFiles save_text(const TextDocument& doc) {
  TextFiles out;
  nlohmann::ordered_json styles = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < doc.chars.size(); ++i) {
    append_utf8(out.text, doc.chars[i].codepoint);
    const auto& st = doc.chars[i].style;
    if (st == CharStyle{}) continue;
    nlohmann::ordered_json e;
    e["i"] = i;
    if (st.upper_lower_significant) e["upper_lower_significant"] = true;
    if (st.color_tag) e["color_tag"] = *st.color_tag;
    styles.push_back(e);
  }
  if (!styles.empty()) out.sidecar = nlohmann::ordered_json{{"styles", styles}}.dump() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Images: binary PGM ("P5", maxval 255).

inline ImageBuffer load_image(std::string_view bytes) {
  std::size_t pos = 0;
  auto skip_space_and_comments = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_number = [&](const char* what) -> std::uint64_t {
    skip_space_and_comments();
    const std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos])) && pos - start < 10)
      v = v * 10 + static_cast<std::uint64_t>(bytes[pos++] - '0');
    if (pos == start) throw ParseError(0, std::string("PGM header: expected ") + what);
    return v;
  };

  if (bytes.size() < 2 || bytes.substr(0, 2) != "P5") throw ParseError(0, "not a binary PGM (missing P5 magic)");
  pos = 2;
  const auto width = read_number("width");
  const auto height = read_number("height");
  const auto maxval = read_number("maxval");
  if (maxval != 255) throw ParseError(0, "PGM maxval must be 255");
  if (width == 0 || height == 0) throw ParseError(0, "PGM dimensions must be positive");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
    throw ParseError(0, "PGM header must end with a single whitespace byte");
  ++pos;
  const std::size_t expected = static_cast<std::size_t>(width * height);
  if (bytes.size() - pos != expected)
    throw ParseError(0, "PGM pixel count " + std::to_string(bytes.size() - pos) + " != width*height " +
                            std::to_string(expected));
  ImageBuffer img;
  img.width = static_cast<std::uint32_t>(width);
  img.height = static_cast<std::uint32_t>(height);
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return img;
}

inline std::string save_image(const ImageBuffer& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(img.pixels.begin(), img.pixels.end());
  return out;
}

}  // namespace stegpat
