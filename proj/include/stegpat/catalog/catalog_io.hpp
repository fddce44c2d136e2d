#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "stegpat/catalog/catalog.hpp"
#include "stegpat/error.hpp"

namespace stegpat {

inline constexpr std::string_view kPlmlVersion = "1.1";

namespace detail {

inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Parses a JSON document, mapping syntax errors to ParseError with a line number.
inline nlohmann::json parse_json_document(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(line_of_offset(text, byte), e.what());
  }
}

class FieldReader {
 public:
  FieldReader(const nlohmann::json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& why) const { throw ParseError(0, path_ + ": " + why); }

  const nlohmann::json* optional(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const nlohmann::json& required(const std::string& key) {
    auto* v = optional(key);
    if (!v) fail("missing field '" + key + "'");
    return *v;
  }

  std::string string(const std::string& key) {
    const auto& v = required(key);
    if (!v.is_string()) fail("'" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::vector<std::string> strings(const std::string& key) {
    std::vector<std::string> out;
    auto* v = optional(key);
    if (!v) return out;
    if (!v->is_array()) fail("'" + key + "' must be an array");
    for (const auto& item : *v) {
      if (!item.is_string()) fail("'" + key + "' must contain strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  PatternId id(const std::string& key, const nlohmann::json& v) const {
    if (!v.is_string()) fail("'" + key + "' must be a pattern id string");
    try {
      return parse_pattern_id(v.get<std::string>());
    } catch (const Error& e) {
      fail("'" + key + "': " + e.what());
    }
  }

  nlohmann::json unknown() const {
    nlohmann::json extra = nlohmann::json::object();
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) extra[it.key()] = it.value();
    return extra;
  }

  void reject_unknown() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) fail("unsupported field '" + it.key() + "'");
  }

  const std::string& path() const { return path_; }

 private:
  const nlohmann::json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

inline PatternRecord record_from_json(const nlohmann::json& j, const std::string& path) {
  FieldReader f(j, path);
  PatternRecord r;
  r.id = f.id("id", f.required("id"));

  {
    FieldReader n(f.required("name"), path + ".name");
    auto obj = object_kind_from_string(n.string("object"));
    if (!obj) n.fail("unknown object kind");
    auto act = action_kind_from_string(n.string("action"));
    if (!act) n.fail("unknown action kind");
    r.name = PatternName{*obj, *act, n.string("text")};
    n.reject_unknown();
  }

  r.aliases = f.strings("aliases");
  if (auto* d = f.optional("description")) {
    if (!d->is_string()) f.fail("'description' must be a string");
    r.description = d->get<std::string>();
  }
  r.evidence = f.strings("evidence");
  r.examples = f.strings("examples");

  if (auto* l = f.optional("links")) {
    FieldReader links(*l, path + ".links");
    if (auto* p = links.optional("parent")) r.links.parent = links.id("parent", *p);
    if (auto* d = links.optional("derived_from")) r.links.derived_from = links.id("derived_from", *d);
    for (const auto& key : {std::string("related"), std::string("hybrid_of")}) {
      auto& target = key == "related" ? r.links.related : r.links.hybrid_of;
      for (const auto& s : links.strings(key)) target.push_back(links.id(key, nlohmann::json(s)));
    }
    links.reject_unknown();
  }
  r.extra = f.unknown();
  return r;
}

inline nlohmann::json record_to_json(const PatternRecord& r) {
  nlohmann::json j = r.extra;
  j["id"] = format_pattern_id(r.id);
  j["name"] = {{"object", std::string(to_string(r.name.object))},
               {"action", std::string(to_string(r.name.action))},
               {"text", r.name.text}};
  j["aliases"] = r.aliases;
  j["description"] = r.description;
  j["evidence"] = r.evidence;
  j["examples"] = r.examples;
  nlohmann::json links = nlohmann::json::object();
  if (r.links.parent) links["parent"] = format_pattern_id(*r.links.parent);
  if (r.links.derived_from) links["derived_from"] = format_pattern_id(*r.links.derived_from);
  auto ids = [](const std::vector<PatternId>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& id : v) a.push_back(format_pattern_id(id));
    return a;
  };
  links["related"] = ids(r.links.related);
  links["hybrid_of"] = ids(r.links.hybrid_of);
  j["links"] = links;
  return j;
}

}  // namespace detail

/// Parses a catalog file. Record order is preserved as read; unknown fields at
/// the top level and inside records are kept and written back by save_catalog.
inline Catalog load_catalog(std::string_view text) {
  const auto doc = detail::parse_json_document(text);
  detail::FieldReader top(doc, "$");
  const auto version = top.string("plml_version");
  if (version != kPlmlVersion) top.fail("unsupported plml_version '" + version + "'");
  const auto& records = top.required("records");
  if (!records.is_array()) top.fail("'records' must be an array");

  Catalog c;
  for (std::size_t i = 0; i < records.size(); ++i)
    c.records.push_back(detail::record_from_json(records[i], "$.records[" + std::to_string(i) + "]"));
  c.extra = top.unknown();
  return c;
}

/// Canonical form: records sorted by ID string, object keys sorted, two-space indent.
inline std::string save_catalog(const Catalog& c) {
  std::vector<const PatternRecord*> sorted;
  for (const auto& r : c.records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const PatternRecord* a, const PatternRecord* b) {
    return format_pattern_id(a->id) < format_pattern_id(b->id);
  });
  nlohmann::json doc = c.extra;
  doc["plml_version"] = std::string(kPlmlVersion);
  doc["records"] = nlohmann::json::array();
  for (const auto* r : sorted) doc["records"].push_back(detail::record_to_json(*r));
  return doc.dump(2) + "\n";
}

}  // namespace stegpat
