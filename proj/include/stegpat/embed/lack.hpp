#pragma once

#include "stegpat/embed/codec.hpp"

// Hybrid of ET1 and EN4 in the style of LACK: gaps carry one message, and the
// packets whose preceding gap was modulated carry a second one in a header
// field. The payload sub-flow is packets 1..F of the stego flow, where F is
// the framed length of the timing message, so the receiver can find it after
// decoding the timing channel alone.

namespace stegpat::lack {

struct Spec {
  IntervalParams timing;
  PatternSpec payload;  // an EN4-family spec over a packet field
};

struct Result {
  PacketFlow stego;
  EmbedReport timing_report;
  EmbedReport payload_report;
};

struct Messages {
  SecretMessage timing;
  SecretMessage payload;
};

inline PatternSpec timing_spec(const Spec& s) { return {parse_pattern_id("ET1"), {}, s.timing, std::nullopt}; }

inline void require_state_value(const Spec& s) {
  if (codec_for(s.payload.pattern) != Codec::StateValue)
    throw Error(Errc::InvalidParams, "the payload half of the hybrid must be an EN4-family spec");
}

inline PacketFlow sub_flow(const PacketFlow& flow, std::size_t framed_timing) {
  PacketFlow sub;
  const std::size_t end = std::min(flow.packets.size(), framed_timing + 1);
  if (end > 1) sub.packets.assign(flow.packets.begin() + 1, flow.packets.begin() + static_cast<std::ptrdiff_t>(end));
  return sub;
}

inline Result embed(const PacketFlow& cover, const SecretMessage& timing_msg, const SecretMessage& payload_msg,
                    const Spec& spec) {
  require_state_value(spec);
  auto timed = stegpat::embed(cover, timing_msg, timing_spec(spec));
  Result out{std::get<PacketFlow>(std::move(timed.stego)), std::move(timed.report), {}};
  const std::size_t framed = timing_msg.framed_size();
  auto payload = stegpat::embed(sub_flow(out.stego, framed), payload_msg, spec.payload);
  auto& sub = std::get<PacketFlow>(payload.stego);
  for (std::size_t i = 0; i < sub.packets.size(); ++i) out.stego.packets[i + 1].fields = sub.packets[i].fields;
  for (auto& h : payload.report.handles_touched) h.index += 1;
  out.payload_report = std::move(payload.report);
  return out;
}

inline Messages extract(const PacketFlow& stego, const Spec& spec) {
  require_state_value(spec);
  Messages m;
  m.timing = stegpat::extract(stego, timing_spec(spec));
  m.payload = stegpat::extract(sub_flow(stego, m.timing.framed_size()), spec.payload);
  return m;
}

}  // namespace stegpat::lack
