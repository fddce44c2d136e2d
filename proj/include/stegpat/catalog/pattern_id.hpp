#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stegpat/error.hpp"

namespace stegpat {

enum class PatternKind { Embedding, Representation };
enum class Temporality { Temporal, NonTemporal };

/// Steganography domain suffix of representation IDs.
enum class Domain : char { Network = 'n', DigitalMedia = 'd', Text = 't', CyberPhysical = 'c', Filesystem = 'f' };

inline constexpr std::size_t kMaxIdDepth = 4;

// Grammar: ('E'|'R') ('T'|'N') int ('.' int)* [domain]. Representation IDs
// must carry the domain letter, embedding IDs must not. Numbers are positive
// and written without leading zeros so that formatting is canonical.
struct PatternId {
  PatternKind kind = PatternKind::Embedding;
  Temporality temporality = Temporality::Temporal;
  std::vector<std::uint32_t> path;
  std::optional<Domain> domain;

  friend bool operator==(const PatternId&, const PatternId&) = default;

  /// Same ID with the last path entry removed; nullopt for roots.
  std::optional<PatternId> parent() const {
    if (path.size() <= 1) return std::nullopt;
    PatternId p = *this;
    p.path.pop_back();
    return p;
  }

  bool is_root() const { return path.size() == 1; }
};

inline std::optional<Domain> domain_from_char(char c) {
  switch (c) {
    case 'n': return Domain::Network;
    case 'd': return Domain::DigitalMedia;
    case 't': return Domain::Text;
    case 'c': return Domain::CyberPhysical;
    case 'f': return Domain::Filesystem;
    default: return std::nullopt;
  }
}

inline PatternId parse_pattern_id(std::string_view s) {
  auto fail = [&](const std::string& why) -> PatternId {
    throw Error(Errc::MalformedId, "'" + std::string(s) + "': " + why);
  };
  if (s.empty()) return fail("empty id");
  if (s.size() < 3) return fail("too short");

  PatternId id;
  if (s[0] == 'E') id.kind = PatternKind::Embedding;
  else if (s[0] == 'R') id.kind = PatternKind::Representation;
  else return fail("must start with E or R");

  if (s[1] == 'T') id.temporality = Temporality::Temporal;
  else if (s[1] == 'N') id.temporality = Temporality::NonTemporal;
  else return fail("second character must be T or N");

  std::size_t pos = 2;
  while (true) {
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    const std::size_t digits = pos - start;
    if (digits == 0) return fail("expected a number at offset " + std::to_string(start));
    if (s[start] == '0') return fail("numbers must be positive without leading zeros");
    if (digits > 9) return fail("number too large");
    std::uint32_t value = 0;
    for (std::size_t i = start; i < pos; ++i) value = value * 10 + static_cast<std::uint32_t>(s[i] - '0');
    id.path.push_back(value);
    if (id.path.size() > kMaxIdDepth) return fail("nesting deeper than 4 levels");
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      continue;
    }
    break;
  }

  if (pos < s.size()) {
    if (pos + 1 != s.size()) return fail("trailing characters");
    const auto d = domain_from_char(s[pos]);
    if (!d) return fail(std::string("illegal domain letter '") + s[pos] + "'");
    if (id.kind == PatternKind::Embedding) return fail("embedding ids carry no domain letter");
    id.domain = d;
  } else if (id.kind == PatternKind::Representation) {
    return fail("representation ids need a domain letter");
  }
  return id;
}

inline std::string format_pattern_id(const PatternId& id) {
  std::string out;
  out.push_back(id.kind == PatternKind::Embedding ? 'E' : 'R');
  out.push_back(id.temporality == Temporality::Temporal ? 'T' : 'N');
  for (std::size_t i = 0; i < id.path.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(id.path[i]);
  }
  if (id.domain) out.push_back(static_cast<char>(*id.domain));
  return out;
}

/// Checks the struct-level invariants that parse_pattern_id guarantees for parsed IDs.
inline bool is_well_formed(const PatternId& id) {
  if (id.path.empty() || id.path.size() > kMaxIdDepth) return false;
  for (auto p : id.path)
    if (p == 0 || p > 999'999'999) return false;
  return id.domain.has_value() == (id.kind == PatternKind::Representation);
}

inline bool operator<(const PatternId& a, const PatternId& b) {
  return format_pattern_id(a) < format_pattern_id(b);
}

}  // namespace stegpat
