#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "stegpat/catalog/pattern_id.hpp"
#include "stegpat/covers/binding.hpp"
#include "stegpat/covers/enumerate.hpp"
#include "stegpat/error.hpp"

namespace stegpat {

enum class StateValueMode { Plain, ReservedUnused, Random, Blind };
enum class CharFeature { Case, ColorTag };

struct IntervalParams {
  std::uint64_t base_us = 0;
  std::uint64_t delta_us = 0;
};

struct RateParams {
  std::uint64_t window_us = 0;
  std::uint32_t hi_rate = 0;  // packets per window for a 1 bit
  std::uint32_t lo_rate = 0;  // packets per window for a 0 bit
};

struct OccurrenceParams {
  std::uint64_t slot_us = 0;
  std::uint32_t slots_per_symbol = 0;
};

struct LossParams {
  std::uint32_t group_size = 0;
  std::uint64_t seq_base = 1;  // first sequence number of group 0; shared by both ends
};

struct PositioningParams {
  std::uint32_t window = 0;
};

struct EnumerationParams {
  std::uint32_t n0 = 0;
  std::uint32_t n1 = 0;
};

struct StateValueParams {
  std::optional<std::uint64_t> prng_seed;
};

struct SizeParams {
  std::uint64_t quantum = 0;
};

struct CharFeatureParams {
  CharFeature feature = CharFeature::Case;
};

struct OrderingParams {
  std::uint32_t reorder_window = 0;
};

using PatternParams =
    std::variant<std::monostate, IntervalParams, RateParams, OccurrenceParams, LossParams, PositioningParams,
                 EnumerationParams, StateValueParams, SizeParams, CharFeatureParams, OrderingParams>;

/// Everything both ends of a channel must agree on: the pattern, where it acts
/// on the carrier, and its parameters. This is the stego key.
struct PatternSpec {
  PatternId pattern;
  CarrierBinding binding;
  PatternParams params;
  std::optional<StateValueMode> mode;  // EN4 family only
};

/// The codec family a pattern ID dispatches to.
enum class Codec {
  Interval,      // ET1
  Rate,          // ET1.1
  Occurrence,    // ET2
  Loss,          // EN1
  Positioning,   // EN2
  Enumeration,   // EN3
  StateValue,    // EN4, EN4.1-EN4.3
  Structure,     // EN5 (size or character feature, chosen by binding/params)
  Size,          // EN5.1
  CharFeature,   // EN5.2
  Ordering,      // hybrid Sequence Modulation / Message Ordering
};

inline Codec codec_for(const PatternId& id) {
  const std::string s = format_pattern_id(id);
  if (s == "ET1") return Codec::Interval;
  if (s == "ET1.1") return Codec::Rate;
  if (s == "ET2") return Codec::Occurrence;
  if (s == "EN1") return Codec::Loss;
  if (s == "EN2") return Codec::Positioning;
  if (s == "EN3") return Codec::Enumeration;
  if (s == "EN4" || s == "EN4.1" || s == "EN4.2" || s == "EN4.3") return Codec::StateValue;
  if (s == "EN5") return Codec::Structure;
  if (s == "EN5.1") return Codec::Size;
  if (s == "EN5.2") return Codec::CharFeature;
  if (s == "RN6n" || s == "RN6.1n") return Codec::Ordering;
  throw Error(Errc::InvalidParams, s + " is neither an embedding pattern nor a declared hybrid with a codec");
}

/// Effective EN4 mode: the sub-pattern fixes it, plain EN4 takes it from the spec.
inline StateValueMode state_value_mode(const PatternSpec& spec) {
  const std::string s = format_pattern_id(spec.pattern);
  std::optional<StateValueMode> fixed;
  if (s == "EN4.1") fixed = StateValueMode::ReservedUnused;
  if (s == "EN4.2") fixed = StateValueMode::Random;
  if (s == "EN4.3") fixed = StateValueMode::Blind;
  if (fixed) {
    if (spec.mode && *spec.mode != *fixed) throw Error(Errc::InvalidParams, "mode contradicts " + s);
    return *fixed;
  }
  return spec.mode.value_or(StateValueMode::Plain);
}

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline unsigned log2_exact(std::uint64_t v) { return static_cast<unsigned>(std::countr_zero(v)); }

template <typename P>
const P& require_params(const PatternSpec& spec, const char* what) {
  if (auto* p = std::get_if<P>(&spec.params)) return *p;
  throw Error(Errc::InvalidParams, format_pattern_id(spec.pattern) + " needs " + what + " parameters");
}

// ---------------------------------------------------------------------------
// Parameter checks shared by the codecs.

inline void check(const IntervalParams& p) {
  if (p.base_us == 0 || p.delta_us == 0) throw Error(Errc::InvalidParams, "base_us and delta_us must be positive");
}

inline void check(const RateParams& p) {
  if (p.window_us == 0) throw Error(Errc::InvalidParams, "window_us must be positive");
  if (p.lo_rate < 1 || p.hi_rate <= p.lo_rate)
    throw Error(Errc::InvalidParams, "rates must satisfy hi_rate > lo_rate >= 1");
}

inline void check(const OccurrenceParams& p) {
  if (p.slot_us == 0) throw Error(Errc::InvalidParams, "slot_us must be positive");
  if (p.slots_per_symbol < 2 || !is_power_of_two(p.slots_per_symbol) || p.slots_per_symbol > (1u << 16))
    throw Error(Errc::InvalidParams, "slots_per_symbol must be a power of two in 2..65536");
}

inline void check(const LossParams& p) {
  if (p.group_size < 2) throw Error(Errc::InvalidParams, "group_size must be at least 2");
}

inline void check(const PositioningParams& p) {
  if (p.window < 2 || !is_power_of_two(p.window) || p.window > (1u << 16))
    throw Error(Errc::InvalidParams, "window must be a power of two in 2..65536");
}

inline void check(const EnumerationParams& p) {
  if (p.n0 == p.n1) throw Error(Errc::InvalidParams, "n0 and n1 must differ");
  if (p.n0 < 1 || p.n1 < 1 || p.n0 > 1024 || p.n1 > 1024)
    throw Error(Errc::InvalidParams, "n0 and n1 must lie in 1..1024");
}

inline void check(const SizeParams& p) {
  if (p.quantum == 0) throw Error(Errc::InvalidParams, "quantum must be positive");
}

inline void check(const OrderingParams& p) {
  if (p.reorder_window < 1 || p.reorder_window > 20)
    throw Error(Errc::InvalidParams, "reorder_window must lie in 1..20");
}

// ---------------------------------------------------------------------------
// JSON form of parameter records and specs.

inline const char* to_string(StateValueMode m) {
  switch (m) {
    case StateValueMode::Plain: return "plain";
    case StateValueMode::ReservedUnused: return "reserved";
    case StateValueMode::Random: return "random";
    case StateValueMode::Blind: return "blind";
  }
  return "?";
}

inline StateValueMode state_value_mode_from_string(std::string_view s) {
  if (s == "plain") return StateValueMode::Plain;
  if (s == "reserved" || s == "reserved_unused") return StateValueMode::ReservedUnused;
  if (s == "random") return StateValueMode::Random;
  if (s == "blind") return StateValueMode::Blind;
  throw Error(Errc::InvalidParams, "unknown mode '" + std::string(s) + "'");
}

namespace detail {

inline std::uint64_t param_u64(const nlohmann::json& j, const char* key, std::optional<std::uint64_t> fallback = {}) {
  auto it = j.find(key);
  if (it == j.end()) {
    if (fallback) return *fallback;
    throw Error(Errc::InvalidParams, std::string("missing parameter '") + key + "'");
  }
  if (!it->is_number_unsigned()) throw Error(Errc::InvalidParams, std::string("'") + key + "' must be unsigned");
  return it->get<std::uint64_t>();
}

inline std::uint32_t param_u32(const nlohmann::json& j, const char* key, std::optional<std::uint64_t> fallback = {}) {
  const auto v = param_u64(j, key, fallback);
  if (v > 0xFFFFFFFFu) throw Error(Errc::InvalidParams, std::string("'") + key + "' out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace detail

/// Builds the parameter record a pattern needs from a JSON object.
inline PatternParams params_from_json(const PatternId& id, const CarrierBinding& binding, const nlohmann::json& j) {
  using detail::param_u32;
  using detail::param_u64;
  if (!j.is_object()) throw Error(Errc::InvalidParams, "parameters must be a JSON object");
  auto char_feature = [&]() -> CharFeatureParams {
    if (auto it = j.find("feature"); it != j.end()) {
      const auto s = it->is_string() ? it->get<std::string>() : std::string();
      if (s == "case") return {CharFeature::Case};
      if (s == "color" || s == "color_tag") return {CharFeature::ColorTag};
      throw Error(Errc::InvalidParams, "feature must be 'case' or 'color'");
    }
    if (binding.target == CarrierBinding::Target::Color) return {CharFeature::ColorTag};
    return {CharFeature::Case};
  };
  switch (codec_for(id)) {
    case Codec::Interval: return IntervalParams{param_u64(j, "base_us"), param_u64(j, "delta_us")};
    case Codec::Rate:
      return RateParams{param_u64(j, "window_us"), param_u32(j, "hi_rate"), param_u32(j, "lo_rate")};
    case Codec::Occurrence: return OccurrenceParams{param_u64(j, "slot_us"), param_u32(j, "slots_per_symbol")};
    case Codec::Loss: return LossParams{param_u32(j, "group_size"), param_u64(j, "seq_base", 1)};
    case Codec::Positioning: return PositioningParams{param_u32(j, "window")};
    case Codec::Enumeration: return EnumerationParams{param_u32(j, "n0"), param_u32(j, "n1")};
    case Codec::StateValue: {
      StateValueParams p;
      if (j.contains("prng_seed")) p.prng_seed = param_u64(j, "prng_seed");
      return p;
    }
    case Codec::Size: return SizeParams{param_u64(j, "quantum")};
    case Codec::CharFeature: return char_feature();
    case Codec::Structure:
      if (j.contains("quantum")) return SizeParams{param_u64(j, "quantum")};
      return char_feature();
    case Codec::Ordering: return OrderingParams{param_u32(j, "reorder_window")};
  }
  return std::monostate{};
}

inline nlohmann::json params_to_json(const PatternParams& params) {
  return std::visit(
      [](const auto& p) -> nlohmann::json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, std::monostate>) return nlohmann::json::object();
        else if constexpr (std::is_same_v<P, IntervalParams>) return {{"base_us", p.base_us}, {"delta_us", p.delta_us}};
        else if constexpr (std::is_same_v<P, RateParams>)
          return {{"window_us", p.window_us}, {"hi_rate", p.hi_rate}, {"lo_rate", p.lo_rate}};
        else if constexpr (std::is_same_v<P, OccurrenceParams>)
          return {{"slot_us", p.slot_us}, {"slots_per_symbol", p.slots_per_symbol}};
        else if constexpr (std::is_same_v<P, LossParams>) return {{"group_size", p.group_size}, {"seq_base", p.seq_base}};
        else if constexpr (std::is_same_v<P, PositioningParams>) return {{"window", p.window}};
        else if constexpr (std::is_same_v<P, EnumerationParams>) return {{"n0", p.n0}, {"n1", p.n1}};
        else if constexpr (std::is_same_v<P, StateValueParams>) {
          nlohmann::json j = nlohmann::json::object();
          if (p.prng_seed) j["prng_seed"] = *p.prng_seed;
          return j;
        } else if constexpr (std::is_same_v<P, SizeParams>) return {{"quantum", p.quantum}};
        else if constexpr (std::is_same_v<P, CharFeatureParams>)
          return {{"feature", p.feature == CharFeature::Case ? "case" : "color"}};
        else return {{"reorder_window", p.reorder_window}};
      },
      params);
}

/// {"pattern": "EN4", "mode": "plain", "binding": "field:ttl", "params": {...}}
inline PatternSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("pattern") || !j["pattern"].is_string())
    throw Error(Errc::InvalidParams, "spec needs a 'pattern' string");
  PatternSpec spec;
  spec.pattern = parse_pattern_id(j["pattern"].get<std::string>());
  if (auto it = j.find("binding"); it != j.end() && it->is_string()) spec.binding = parse_binding(it->get<std::string>());
  if (auto it = j.find("mode"); it != j.end() && it->is_string())
    spec.mode = state_value_mode_from_string(it->get<std::string>());
  spec.params = params_from_json(spec.pattern, spec.binding,
                                 j.contains("params") ? j["params"] : nlohmann::json::object());
  return spec;
}

inline nlohmann::json spec_to_json(const PatternSpec& spec) {
  nlohmann::json j;
  j["pattern"] = format_pattern_id(spec.pattern);
  j["binding"] = format_binding(spec.binding);
  if (spec.mode) j["mode"] = to_string(*spec.mode);
  j["params"] = params_to_json(spec.params);
  return j;
}

}  // namespace stegpat
