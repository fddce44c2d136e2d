#pragma once

#include <span>
#include <variant>
#include <vector>

#include "stegpat/bits.hpp"
#include "stegpat/embed/non_temporal.hpp"
#include "stegpat/embed/ordering.hpp"
#include "stegpat/embed/spec.hpp"
#include "stegpat/embed/state_value.hpp"
#include "stegpat/embed/structure.hpp"
#include "stegpat/embed/temporal.hpp"

namespace stegpat {

struct EmbedReport {
  std::size_t bits_embedded = 0;  // framed length
  std::size_t payload_bits = 0;
  std::size_t capacity_bits = 0;
  std::vector<ObjectHandle> handles_touched;
};

struct EmbedResult {
  CoverObject stego;
  EmbedReport report;
};

namespace detail {

[[noreturn]] inline void unsupported(const PatternSpec& spec, CarrierType t) {
  throw Error(Errc::UnsupportedCarrier,
              format_pattern_id(spec.pattern) + " is not defined on a " + to_string(t) + " carrier");
}

inline void require_flow_target(const PatternSpec& spec, CarrierBinding::Target natural) {
  if (spec.binding.target != CarrierBinding::Target::Default && spec.binding.target != natural)
    throw Error(Errc::UnknownBinding, format_pattern_id(spec.pattern) + " acts on '" +
                                          format_binding(CarrierBinding::of(natural)) + "', not '" +
                                          format_binding(spec.binding) + "'");
}

/// EN5 resolves to size or character-feature modulation by its parameters.
inline Codec effective_codec(const PatternSpec& spec) {
  const Codec c = codec_for(spec.pattern);
  if (c != Codec::Structure) return c;
  if (std::holds_alternative<SizeParams>(spec.params)) return Codec::Size;
  if (std::holds_alternative<CharFeatureParams>(spec.params)) return Codec::CharFeature;
  throw Error(Errc::InvalidParams, "EN5 needs size (quantum) or character feature parameters");
}

// One visitor serves capacity, modulate and demodulate. `op` is called with
// the concrete codec namespace bound in; unsupported pairs throw before that.
template <typename Op>
auto dispatch(const CoverObject& cover, const PatternSpec& spec, Op&& op) {
  using T = CarrierBinding::Target;
  const CarrierType type = carrier_type(cover);
  const Codec codec = effective_codec(spec);
  const auto* flow = std::get_if<PacketFlow>(&cover);
  const auto* text = std::get_if<TextDocument>(&cover);
  const auto* image = std::get_if<ImageBuffer>(&cover);
  switch (codec) {
    case Codec::Interval: {
      if (!flow) unsupported(spec, type);
      require_flow_target(spec, T::Packets);
      const auto& p = require_params<IntervalParams>(spec, "interval");
      return op.flow(*flow, [&](auto&& f) { return interval::capacity(f, p); },
                     [&](auto&& f, auto bits) { return interval::modulate(f, bits, p); },
                     [&](auto&& f) { return interval::demodulate(f, p); });
    }
    case Codec::Rate: {
      if (!flow) unsupported(spec, type);
      require_flow_target(spec, T::Packets);
      const auto& p = require_params<RateParams>(spec, "rate");
      return op.flow(*flow, [&](auto&& f) { return rate::capacity(f, p); },
                     [&](auto&& f, auto bits) { return rate::modulate(f, bits, p); },
                     [&](auto&& f) { return rate::demodulate(f, p); });
    }
    case Codec::Occurrence: {
      if (!flow) unsupported(spec, type);
      require_flow_target(spec, T::Events);
      const auto& p = require_params<OccurrenceParams>(spec, "occurrence");
      return op.flow(*flow, [&](auto&& f) { return occurrence::capacity(f, p); },
                     [&](auto&& f, auto bits) { return occurrence::modulate(f, bits, p); },
                     [&](auto&& f) { return occurrence::demodulate(f, p); });
    }
    case Codec::Loss: {
      if (!flow) unsupported(spec, type);
      require_flow_target(spec, T::Packets);
      const auto& p = require_params<LossParams>(spec, "loss");
      return op.flow(*flow, [&](auto&& f) { return loss::capacity(f, p); },
                     [&](auto&& f, auto bits) { return loss::modulate(f, bits, p); },
                     [&](auto&& f) { return loss::demodulate(f, p); });
    }
    case Codec::Ordering: {
      if (!flow) unsupported(spec, type);
      require_flow_target(spec, T::Packets);
      const auto& p = require_params<OrderingParams>(spec, "ordering");
      return op.flow(*flow, [&](auto&& f) { return ordering::capacity(f, p); },
                     [&](auto&& f, auto bits) { return ordering::modulate(f, bits, p); },
                     [&](auto&& f) { return ordering::demodulate(f, p); });
    }
    case Codec::Positioning:
    case Codec::Enumeration:
    case Codec::Size:
    case Codec::CharFeature:
      break;
    case Codec::StateValue: {
      const auto mode = state_value_mode(spec);
      const auto& p = require_params<StateValueParams>(spec, "state/value");
      const auto& b = spec.binding;
      auto cap = [&](auto&& c) { return state_value::capacity(c, b, mode, p); };
      auto mod = [&](auto&& c, auto bits) { return state_value::modulate(c, bits, b, mode, p); };
      auto dem = [&](auto&& c) { return state_value::demodulate(c, b, mode, p); };
      if (flow) return op.flow(*flow, cap, mod, dem);
      if (image) return op.image(*image, cap, mod, dem);
      unsupported(spec, type);
    }
    case Codec::Structure:
      break;
  }
  // Codecs defined on both flows and text.
  if (image) unsupported(spec, type);
  const auto& b = spec.binding;
  if (codec == Codec::Positioning) {
    const auto& p = require_params<PositioningParams>(spec, "positioning");
    auto cap = [&](auto&& c) { return positioning::capacity(c, b, p); };
    auto mod = [&](auto&& c, auto bits) { return positioning::modulate(c, bits, b, p); };
    auto dem = [&](auto&& c) { return positioning::demodulate(c, b, p); };
    return flow ? op.flow(*flow, cap, mod, dem) : op.text(*text, cap, mod, dem);
  }
  if (codec == Codec::Enumeration) {
    const auto& p = require_params<EnumerationParams>(spec, "enumeration");
    auto cap = [&](auto&& c) { return enumeration::capacity(c, b, p); };
    auto mod = [&](auto&& c, auto bits) { return enumeration::modulate(c, bits, b, p); };
    auto dem = [&](auto&& c) { return enumeration::demodulate(c, b, p); };
    return flow ? op.flow(*flow, cap, mod, dem) : op.text(*text, cap, mod, dem);
  }
  if (codec == Codec::Size) {
    const auto& p = require_params<SizeParams>(spec, "size");
    auto cap = [&](auto&& c) { return size_mod::capacity(c, b, p); };
    auto mod = [&](auto&& c, auto bits) { return size_mod::modulate(c, bits, b, p); };
    auto dem = [&](auto&& c) { return size_mod::demodulate(c, b, p); };
    return flow ? op.flow(*flow, cap, mod, dem) : op.text(*text, cap, mod, dem);
  }
  if (!text) unsupported(spec, type);
  const auto& p = require_params<CharFeatureParams>(spec, "character feature");
  return op.text(*text, [&](auto&& c) { return char_feature::capacity(c, b, p); },
                 [&](auto&& c, auto bits) { return char_feature::modulate(c, bits, b, p); },
                 [&](auto&& c) { return char_feature::demodulate(c, b, p); });
}

template <typename Fn>
struct SameForAll {
  Fn fn;
  template <typename C, typename... F>
  auto flow(const C& c, F&&... f) { return fn(c, f...); }
  template <typename C, typename... F>
  auto text(const C& c, F&&... f) { return fn(c, f...); }
  template <typename C, typename... F>
  auto image(const C& c, F&&... f) { return fn(c, f...); }
};

template <typename Fn>
SameForAll(Fn) -> SameForAll<Fn>;

inline void require_valid_cover(const CoverObject& cover) {
  if (auto why = cover_violation(cover)) throw Error(Errc::InvalidParams, "invalid cover: " + *why);
}

}  // namespace detail

/// Raw bit budget of the carrier for this spec. The 16-bit length frame is
/// paid out of it: a message of L bits fits iff 16 + L <= capacity.
inline std::size_t capacity(const CoverObject& cover, const PatternSpec& spec) {
  detail::require_valid_cover(cover);
  return detail::dispatch(cover, spec, detail::SameForAll{[](const auto& c, auto&& cap, auto&&, auto&&) {
                            return static_cast<std::size_t>(cap(c));
                          }});
}

inline EmbedResult embed(const CoverObject& cover, const SecretMessage& message, const PatternSpec& spec) {
  detail::require_valid_cover(cover);
  const BitString framed = message.framed();
  return detail::dispatch(cover, spec, detail::SameForAll{[&](const auto& c, auto&& cap, auto&& mod, auto&&) {
                            const std::size_t available = cap(c);
                            require_capacity(framed.size(), available);
                            auto m = mod(c, std::span<const std::uint8_t>(framed));
                            return EmbedResult{CoverObject(std::move(m.stego)),
                                               {framed.size(), message.bits.size(), available, std::move(m.touched)}};
                          }});
}

/// Raw decoded stream, before the frame is read. Useful for diagnostics.
inline BitString extract_raw(const CoverObject& stego, const PatternSpec& spec) {
  detail::require_valid_cover(stego);
  return detail::dispatch(stego, spec, detail::SameForAll{[](const auto& c, auto&&, auto&&, auto&& dem) {
                            return BitString(dem(c));
                          }});
}

inline SecretMessage extract(const CoverObject& stego, const PatternSpec& spec) {
  return deframe(extract_raw(stego, spec));
}

/// Carrier types on which a pattern's codec is defined.
inline std::vector<CarrierType> supported_carriers(const PatternId& id) {
  using C = CarrierType;
  switch (codec_for(id)) {
    case Codec::Interval:
    case Codec::Rate:
    case Codec::Occurrence:
    case Codec::Loss:
    case Codec::Ordering: return {C::Flow};
    case Codec::Positioning:
    case Codec::Enumeration:
    case Codec::Size:
    case Codec::Structure: return {C::Flow, C::Text};
    case Codec::StateValue: {
      const auto s = format_pattern_id(id);
      if (s == "EN4" || s == "EN4.2") return {C::Flow, C::Image};
      return {C::Flow};
    }
    case Codec::CharFeature: return {C::Text};
  }
  return {};
}

}  // namespace stegpat
