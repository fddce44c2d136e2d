#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stegpat/catalog/pattern_id.hpp"
#include "stegpat/covers/glossary.hpp"
#include "stegpat/error.hpp"

namespace stegpat {

struct PatternName {
  ModifiableObjectKind object = ModifiableObjectKind::Element;
  ActionKind action = ActionKind::Modulation;
  std::string text;  // e.g. "Event/Element Interval Modulation"

  friend bool operator==(const PatternName&, const PatternName&) = default;
};

struct PatternLinks {
  std::optional<PatternId> parent;
  std::vector<PatternId> related;
  std::vector<PatternId> hybrid_of;
  std::optional<PatternId> derived_from;

  friend bool operator==(const PatternLinks&, const PatternLinks&) = default;
};

struct PatternRecord {
  PatternId id;
  PatternName name;
  std::vector<std::string> aliases;
  std::string description;
  std::vector<std::string> evidence;
  std::vector<std::string> examples;
  PatternLinks links;
  nlohmann::json extra = nlohmann::json::object();  // unknown attributes, kept verbatim

  friend bool operator==(const PatternRecord&, const PatternRecord&) = default;

  bool is_hybrid() const { return !links.hybrid_of.empty(); }
  bool is_derived() const { return links.derived_from.has_value(); }
};

/// "ET2. Event Occurrence"
inline std::string rendered_name(const PatternRecord& r) { return format_pattern_id(r.id) + ". " + r.name.text; }

struct Catalog {
  std::vector<PatternRecord> records;
  nlohmann::json extra = nlohmann::json::object();

  friend bool operator==(const Catalog&, const Catalog&) = default;

  const PatternRecord* find(const PatternId& id) const {
    for (const auto& r : records)
      if (r.id == id) return &r;
    return nullptr;
  }

  std::vector<const PatternRecord*> of_kind(PatternKind kind) const {
    std::vector<const PatternRecord*> out;
    for (const auto& r : records)
      if (r.id.kind == kind) out.push_back(&r);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  MalformedRecordId,
  DuplicateId,
  DuplicateAlias,
  DuplicateName,
  OrphanParent,
  ParentMismatch,
  DanglingLink,
  HybridArity,
  NamingConvention,
  DerivedFromEmbedding,
};

inline constexpr std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::MalformedRecordId: return "MalformedRecordId";
    case ViolationKind::DuplicateId: return "DuplicateId";
    case ViolationKind::DuplicateAlias: return "DuplicateAlias";
    case ViolationKind::DuplicateName: return "DuplicateName";
    case ViolationKind::OrphanParent: return "OrphanParent";
    case ViolationKind::ParentMismatch: return "ParentMismatch";
    case ViolationKind::DanglingLink: return "DanglingLink";
    case ViolationKind::HybridArity: return "HybridArity";
    case ViolationKind::NamingConvention: return "NamingConvention";
    case ViolationKind::DerivedFromEmbedding: return "DerivedFromEmbedding";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string record;  // canonical ID of the offending record
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

namespace detail {

inline std::string fold_case(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline bool looks_like_id_prefix(std::string_view text) {
  const auto space = text.find(' ');
  std::string_view head = text.substr(0, space);
  if (!head.empty() && head.back() == '.') head.remove_suffix(1);
  if (head.size() < 3) return false;
  try {
    parse_pattern_id(head);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline std::optional<std::string> naming_breach(const PatternRecord& r) {
  const auto& text = r.name.text;
  if (text.empty()) return "empty name";
  if (text.front() == ' ' || text.back() == ' ') return "name has leading or trailing spaces";
  if (text.find("  ") != std::string::npos) return "name components must be separated by a single space";
  if (text.find('\n') != std::string::npos || text.find('\t') != std::string::npos)
    return "name contains control whitespace";
  if (looks_like_id_prefix(text)) return "the number belongs to the id, not the name text";
  const bool temporal = r.id.temporality == Temporality::Temporal;
  if (r.name.action == ActionKind::Occurrence && !temporal)
    return "Occurrence is a temporal action but the id is non-temporal";
  if (r.name.action == ActionKind::Positioning && temporal)
    return "Positioning is a non-temporal action but the id is temporal";
  if (r.name.object == ModifiableObjectKind::Interval && !temporal)
    return "Interval objects are temporal but the id is non-temporal";
  return std::nullopt;
}

}  // namespace detail

/// Every invariant breach as data. An empty result means the catalog is valid.
inline std::vector<Violation> validate_catalog(const Catalog& c) {
  std::vector<Violation> out;
  std::map<std::string, const PatternRecord*> by_id;
  std::map<std::string, std::string> alias_owner;
  std::map<std::string, std::string> name_owner;

  for (const auto& r : c.records) {
    const std::string id = is_well_formed(r.id) ? format_pattern_id(r.id) : std::string("<malformed>");
    if (!is_well_formed(r.id)) {
      out.push_back({ViolationKind::MalformedRecordId, id, "id violates the grammar invariants"});
      continue;
    }
    if (!by_id.emplace(id, &r).second) out.push_back({ViolationKind::DuplicateId, id, "id appears more than once"});
  }

  for (const auto& r : c.records) {
    if (!is_well_formed(r.id)) continue;
    const std::string id = format_pattern_id(r.id);

    for (const auto& alias : r.aliases) {
      const auto key = detail::fold_case(alias);
      auto [it, inserted] = alias_owner.emplace(key, id);
      if (!inserted)
        out.push_back({ViolationKind::DuplicateAlias, id, "alias '" + alias + "' already used by " + it->second});
      else if (by_id.count(alias))
        out.push_back({ViolationKind::DuplicateAlias, id, "alias '" + alias + "' collides with a pattern id"});
    }

    // Mirrors share names with their embedding peer; within one kind and domain a name is unique.
    const std::string name_key = std::string(r.id.kind == PatternKind::Embedding ? "E" : "R") +
                                 (r.id.domain ? static_cast<char>(*r.id.domain) : '-') + "|" +
                                 detail::fold_case(r.name.text);
    if (auto [it, inserted] = name_owner.emplace(name_key, id); !inserted)
      out.push_back({ViolationKind::DuplicateName, id, "name '" + r.name.text + "' already used by " + it->second});

    if (auto why = detail::naming_breach(r)) out.push_back({ViolationKind::NamingConvention, id, *why});

    if (auto implied = r.id.parent()) {
      if (!by_id.count(format_pattern_id(*implied)))
        out.push_back({ViolationKind::OrphanParent, id, "parent " + format_pattern_id(*implied) + " missing"});
      else if (r.links.parent != implied)
        out.push_back({ViolationKind::ParentMismatch, id,
                       "links.parent must be " + format_pattern_id(*implied)});
    } else if (r.links.parent) {
      out.push_back({ViolationKind::ParentMismatch, id, "root record declares a parent"});
    }

    auto check_target = [&](const PatternId& target, std::string_view role) {
      if (target == r.id) {
        out.push_back({ViolationKind::DanglingLink, id, std::string(role) + " link points to itself"});
      } else if (!is_well_formed(target) || !by_id.count(format_pattern_id(target))) {
        out.push_back({ViolationKind::DanglingLink, id,
                       std::string(role) + " link to unknown " +
                           (is_well_formed(target) ? format_pattern_id(target) : std::string("<malformed>"))});
      }
    };
    for (const auto& t : r.links.related) check_target(t, "related");
    for (const auto& t : r.links.hybrid_of) check_target(t, "hybrid_of");
    if (r.links.hybrid_of.size() == 1)
      out.push_back({ViolationKind::HybridArity, id, "a hybrid composes at least two patterns"});
    if (r.links.derived_from) {
      if (r.id.kind != PatternKind::Representation)
        out.push_back({ViolationKind::DerivedFromEmbedding, id, "only representation patterns are derived"});
      check_target(*r.links.derived_from, "derived_from");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lookup

/// Matches canonical IDs, then names (bare or rendered), then aliases, case-insensitively.
/// When a bare name is shared by an embedding pattern and its representation
/// mirrors, the embedding pattern wins; mirrors are reachable by ID or alias.
inline const PatternRecord& resolve(const Catalog& c, std::string_view key) {
  const std::string folded = detail::fold_case(key);
  auto unique = [&](std::vector<const PatternRecord*> hits) -> const PatternRecord* {
    if (hits.empty()) return nullptr;
    if (hits.size() > 1) {
      std::vector<const PatternRecord*> embedding;
      for (auto* h : hits)
        if (h->id.kind == PatternKind::Embedding) embedding.push_back(h);
      if (embedding.size() == 1) return embedding.front();
      throw Error(Errc::AmbiguousKey, "'" + std::string(key) + "' matches " + std::to_string(hits.size()) +
                                          " records");
    }
    return hits.front();
  };

  std::vector<const PatternRecord*> hits;
  for (const auto& r : c.records)
    if (is_well_formed(r.id) && detail::fold_case(format_pattern_id(r.id)) == folded) hits.push_back(&r);
  if (auto* r = unique(hits)) return *r;

  hits.clear();
  for (const auto& r : c.records)
    if (detail::fold_case(r.name.text) == folded ||
        (is_well_formed(r.id) && detail::fold_case(rendered_name(r)) == folded))
      hits.push_back(&r);
  if (auto* r = unique(hits)) return *r;

  hits.clear();
  for (const auto& r : c.records)
    for (const auto& a : r.aliases)
      if (detail::fold_case(a) == folded) {
        hits.push_back(&r);
        break;
      }
  if (hits.size() > 1) throw Error(Errc::AmbiguousKey, "alias '" + std::string(key) + "' is not unique");
  if (hits.size() == 1) return *hits.front();
  throw Error(Errc::NotFound, "no pattern matches '" + std::string(key) + "'");
}

}  // namespace stegpat
