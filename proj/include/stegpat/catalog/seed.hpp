#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "stegpat/catalog/catalog.hpp"

namespace stegpat {

namespace detail {

struct SeedEntry {
  std::string id;
  ModifiableObjectKind object;
  ActionKind action;
  const char* name;
  const char* description;
  std::vector<std::string> aliases = {};
  std::vector<std::string> examples = {};
  std::vector<std::string> related = {};
  std::vector<std::string> hybrid_of = {};
  std::string derived_from = {};
};

inline PatternRecord make_record(const SeedEntry& e) {
  PatternRecord r;
  r.id = parse_pattern_id(e.id);
  r.name = PatternName{e.object, e.action, e.name};
  r.aliases = e.aliases;
  r.description = e.description;
  r.examples = e.examples;
  r.links.parent = r.id.parent();
  for (const auto& t : e.related) r.links.related.push_back(parse_pattern_id(t));
  for (const auto& t : e.hybrid_of) r.links.hybrid_of.push_back(parse_pattern_id(t));
  if (!e.derived_from.empty()) r.links.derived_from = parse_pattern_id(e.derived_from);
  return r;
}

/// Network-domain representation mirror of an embedding entry: same path, suffix 'n'.
inline SeedEntry mirror(const SeedEntry& e, std::vector<std::string> aliases = {}) {
  SeedEntry m = e;
  m.id = "R" + e.id.substr(1) + "n";
  m.aliases = std::move(aliases);
  m.examples = {};
  m.related = {};
  return m;
}

}  // namespace detail

/// The built-in taxonomy: 13 embedding patterns, their network representation
/// mirrors, three derived representation patterns and two hybrids.
/// Records are returned in canonical (ID string) order.
inline Catalog seed_catalog() {
  using O = ModifiableObjectKind;
  using A = ActionKind;
  using detail::SeedEntry;

  const std::vector<SeedEntry> embedding = {
      {"ET1", O::Interval, A::Modulation, "Event/Element Interval Modulation",
       "Secret bits select the length of the gap between consecutive events or elements.",
       {}, {"inter-packet gaps of a flow", "pauses between connection setups"}},
      {"ET1.1", O::Interval, A::Modulation, "Rate/Throughput Modulation",
       "Secret bits select how many events or elements fall into a time window; a run of gaps "
       "is changed together so that only the aggregate rate carries data.",
       {}, {"packet rate of a bulk transfer", "items produced per hour"}},
      {"ET2", O::Event, A::Occurrence, "Event Occurrence",
       "Secret bits select the point in time at which an event is triggered. Elements are "
       "deliberately left to the positioning and enumeration patterns.",
       {}, {"sending a marker packet in a chosen time slot", "timing a disconnect"}},
      {"EN1", O::Element, A::Modulation, "Artificial Element-Loss Modulation",
       "Secret bits select which elements of a sequence are suppressed.",
       {}, {"dropping selected segments of a flow", "omitting punctuation marks"}},
      {"EN2", O::Element, A::Positioning, "Elements/Features Positioning",
       "Secret bits select where a predefined element or feature sits within a sequence.",
       {}, {"position of one header option inside the option list", "placing a marker character"}},
      {"EN3", O::Element, A::Enumeration, "Elements/Features Enumeration",
       "Secret bits select how often an element or feature appears in a sequence.",
       {}, {"fragment count of a datagram", "single or double spaces between words"}},
      {"EN4", O::StateValue, A::Modulation, "State/Value Modulation",
       "Secret bits select the state or value of a feature.",
       {}, {"least significant bit of a hop-limit field", "pixel intensity LSB"}},
      {"EN4.1", O::StateValue, A::Modulation, "Reserved/Unused State/Value Modulation",
       "Secret bits are written into states or values that the carrier leaves reserved or unused.",
       {}, {"reserved header bits", "unused device registers"}},
      {"EN4.2", O::StateValue, A::Modulation, "Random Modulation",
       "A value that is expected to look random is replaced by secret data that also looks random.",
       {}, {"encrypted data in a nonce-like header field"}},
      {"EN4.3", O::StateValue, A::Corruption, "Blind State/Value Modulation",
       "Secret bits decide whether data is blindly overwritten, without regard for its structure.",
       {}, {"invalidating a checksum on purpose", "overwriting a payload"}},
      {"EN5", O::Feature, A::Modulation, "Feature Structure Modulation",
       "Secret bits change structural properties of a feature other than its value, position or count.",
       {}, {"growing or shrinking consecutive packets", "changing character style"}},
      {"EN5.1", O::Feature, A::Modulation, "Size Modulation",
       "Secret bits select the size of an element, typically by adding unused space.",
       {}, {"padding packets to chosen lengths", "line lengths in a document"}},
      {"EN5.2", O::Feature, A::Modulation, "Character Feature Modulation",
       "Secret bits select visual features of characters such as case or colour.",
       {}, {"letter case in protocol keywords", "text colour"}, {"EN4"}},
  };

  std::vector<SeedEntry> all = embedding;
  auto aliases_for = [](std::string_view id) -> std::vector<std::string> {
    if (id == "ET1") return {"Inter-packet Times"};
    if (id == "ET1.1") return {"Rate/Throughput"};
    if (id == "ET2") return {"Message Timing"};
    if (id == "EN1") return {"Artificial Loss"};
    if (id == "EN4") return {"Value Modulation"};
    if (id == "EN4.1") return {"Reserved/Unused"};
    if (id == "EN5.1") return {"Payload Field Size Modulation"};
    return {};
  };
  for (const auto& e : embedding) all.push_back(detail::mirror(e, aliases_for(e.id)));

  all.push_back({"RT2.1n", O::Event, A::Corruption, "Frame Corruptions",
                 "The receiver sees frames destroyed by a collision; the moment of the collision carries the "
                 "data while the frame contents do not.",
                 {"Frame Collisions"}, {"collision slot chosen by the sender"}, {}, {}, "RT2n"});
  all.push_back({"RN1.1n", O::Element, A::Modulation, "Artificial Retransmissions Modulation",
                 "The receiver sees retransmissions that the sender provoked, for example by suppressing "
                 "segments or overflowing a buffer.",
                 {"Artificial Retransmissions"}, {"retransmitted segments under ARQ"}, {"RN3n"}, {}, "RN1n"});
  all.push_back({"RN1.2n", O::Event, A::Modulation, "Artificial (Forced) Reconnections Modulation",
                 "The receiver sees clients reconnecting after the sender forced them off a shared node.",
                 {"Artificial Reconnections"}, {"client list polled at a broker"}, {"RN4n"}, {}, "RN1n"});
  all.push_back({"RN6n", O::Element, A::Modulation, "Sequence Modulation",
                 "Hybrid: both the position of each element and the number of elements are interpreted.",
                 {}, {}, {}, {"RN2n", "RN3n"}});
  all.push_back({"RN6.1n", O::Element, A::Positioning, "Message Ordering",
                 "Hybrid: the order of whole PDUs is interpreted rather than the order inside one message.",
                 {"PDU Ordering"}, {"permuting segments inside a window"}, {}, {"RN2n", "RN3n"}});

  Catalog c;
  for (const auto& e : all) c.records.push_back(detail::make_record(e));
  std::sort(c.records.begin(), c.records.end(),
            [](const PatternRecord& a, const PatternRecord& b) { return a.id < b.id; });
  return c;
}

}  // namespace stegpat
