#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace stegpat {

/// Objects a pattern acts on. Distinct from the cover object that carries them.
enum class ModifiableObjectKind { Event, Element, Feature, Interval, StateValue };

enum class ActionKind { Occurrence, Modulation, Corruption, Enumeration, Repeating, Positioning };

inline constexpr std::array kObjectKinds = {ModifiableObjectKind::Event, ModifiableObjectKind::Element,
                                            ModifiableObjectKind::Feature, ModifiableObjectKind::Interval,
                                            ModifiableObjectKind::StateValue};

inline constexpr std::array kActionKinds = {ActionKind::Occurrence,  ActionKind::Modulation,
                                            ActionKind::Corruption,  ActionKind::Enumeration,
                                            ActionKind::Repeating,   ActionKind::Positioning};

inline constexpr std::string_view to_string(ModifiableObjectKind k) {
  switch (k) {
    case ModifiableObjectKind::Event: return "Event";
    case ModifiableObjectKind::Element: return "Element";
    case ModifiableObjectKind::Feature: return "Feature";
    case ModifiableObjectKind::Interval: return "Interval";
    case ModifiableObjectKind::StateValue: return "StateValue";
  }
  return "?";
}

inline constexpr std::string_view to_string(ActionKind k) {
  switch (k) {
    case ActionKind::Occurrence: return "Occurrence";
    case ActionKind::Modulation: return "Modulation";
    case ActionKind::Corruption: return "Corruption";
    case ActionKind::Enumeration: return "Enumeration";
    case ActionKind::Repeating: return "Repeating";
    case ActionKind::Positioning: return "Positioning";
  }
  return "?";
}

inline std::optional<ModifiableObjectKind> object_kind_from_string(std::string_view s) {
  for (auto k : kObjectKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

inline std::optional<ActionKind> action_kind_from_string(std::string_view s) {
  for (auto k : kActionKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// Repeating duplicates things, which is a special case of changing how many there are.
inline constexpr bool is_sub_form_of_enumeration(ActionKind k) { return k == ActionKind::Repeating; }

}  // namespace stegpat
