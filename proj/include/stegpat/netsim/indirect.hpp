#pragma once

#include <bit>

#include "stegpat/embed/codec.hpp"
#include "stegpat/netsim/channel.hpp"
#include "stegpat/netsim/decoders.hpp"

// End-to-end runs: the covert sender embeds into a synthetic cover, its stego
// object is turned into a script, the channel reacts, and the covert receiver
// decodes whatever the trace shows.

namespace stegpat::netsim {

struct IndirectResult {
  SecretMessage sent;
  SecretMessage recovered;
  std::string embed_id;
  std::string represent_id;
  ScenarioScript script;
  ObservationTrace trace;
};

/// Script that sends every stego packet and drops the cover packets the
/// stego flow no longer contains, in timestamp order.
inline ScenarioScript script_from_flows(const PacketFlow& cover, const PacketFlow& stego) {
  std::set<std::uint64_t> kept;
  for (const auto& p : stego.packets) kept.insert(p.seq);
  std::vector<ScriptAction> actions;
  for (const auto& p : stego.packets) actions.push_back({p.ts_us, Send{p}});
  for (const auto& p : cover.packets)
    if (!kept.count(p.seq)) actions.push_back({p.ts_us, Drop{p.seq}});
  std::stable_sort(actions.begin(), actions.end(),
                   [](const ScriptAction& a, const ScriptAction& b) { return a.ts_us < b.ts_us; });
  return {std::move(actions)};
}

namespace detail {

inline constexpr std::uint64_t kPacketSpacingUs = 1000;

[[noreturn]] inline void incompatible(const PatternSpec& spec, const char* decoder) {
  throw Error(Errc::InvalidParams, format_pattern_id(spec.pattern) + " cannot drive the " + decoder + " decoder");
}

/// An odd disconnect value whose even neighbour is harmless, so that the LSB
/// alone decides whether the client gets kicked.
inline std::uint64_t trigger_value(const ChannelModel& ch) {
  for (auto v : ch.disconnect_values)
    if ((v & 1) && !ch.disconnect_values.count(v & ~std::uint64_t{1})) return v;
  throw Error(Errc::InvalidParams, "channel has no odd disconnect value with a harmless even neighbour");
}

inline IndirectResult via_reconnections(const PatternSpec& spec, const ReconnectionDecoder& d, const ChannelModel& ch,
                                        const SecretMessage& msg) {
  if (codec_for(spec.pattern) != Codec::StateValue || state_value_mode(spec) != StateValueMode::Plain ||
      spec.binding.target != CarrierBinding::Target::Field)
    incompatible(spec, "reconnection");
  if (d.client_ids.empty() || d.slot_us == 0) throw Error(Errc::InvalidParams, "reconnection decoder needs clients and slot_us");
  if (ch.reconnect_delay_us >= d.slot_us)
    throw Error(Errc::InvalidParams, "reconnect_delay_us must be shorter than the decoder slot");
  const std::uint64_t trigger = trigger_value(ch);
  const unsigned width = std::max(8u, static_cast<unsigned>(std::bit_width(trigger)));
  const std::size_t n = msg.framed_size(), m = d.client_ids.size();
  PacketFlow cover;
  for (std::size_t i = 0; i < n; ++i) {
    Packet p;
    p.ts_us = (i / m) * d.slot_us;
    p.seq = i + 1;
    p.fields[spec.binding.name] = {trigger & ~std::uint64_t{1}, width, false};
    cover.packets.push_back(std::move(p));
  }
  const auto stego = std::get<PacketFlow>(embed(cover, msg, spec).stego);
  IndirectResult r{msg, {}, {}, {}, {}, {}};
  for (std::size_t i = 0; i < n; ++i)
    r.script.actions.push_back(
        {stego.packets[i].ts_us, SendValue{d.client_ids[i % m], stego.packets[i].fields.at(spec.binding.name).value}});
  r.trace = simulate(r.script, ch);
  r.recovered = decode_reconnections(r.trace, d);
  return r;
}

inline IndirectResult via_retransmissions(const PatternSpec& spec, const RetransmissionDecoder& d,
                                          const ChannelModel& ch, const SecretMessage& msg) {
  if (codec_for(spec.pattern) != Codec::Loss) incompatible(spec, "retransmission");
  const auto& p = require_params<LossParams>(spec, "loss");
  if (p.group_size != d.group_size || p.seq_base != d.seq_base)
    throw Error(Errc::InvalidParams, "sender and receiver disagree on the sequence groups");
  PacketFlow cover;
  const std::size_t n = msg.framed_size() * p.group_size;
  for (std::size_t i = 0; i < n; ++i) {
    Packet pkt;
    pkt.ts_us = i * kPacketSpacingUs;
    pkt.seq = p.seq_base + i;
    cover.packets.push_back(std::move(pkt));
  }
  const auto stego = std::get<PacketFlow>(embed(cover, msg, spec).stego);
  IndirectResult r{msg, {}, {}, {}, script_from_flows(cover, stego), {}};
  r.trace = simulate(r.script, ch);
  r.recovered = decode_retransmissions(r.trace, d);
  return r;
}

inline IndirectResult via_frame_corruptions(const PatternSpec& spec, const FrameCorruptionDecoder& d,
                                            const ChannelModel& ch, const SecretMessage& msg) {
  if (codec_for(spec.pattern) != Codec::Occurrence) incompatible(spec, "frame corruption");
  const auto& p = require_params<OccurrenceParams>(spec, "occurrence");
  if (p.slots_per_symbol != d.slots_per_symbol)
    throw Error(Errc::InvalidParams, "sender and receiver disagree on slots_per_symbol");
  if (p.slot_us != ch.collision_slot_us)
    throw Error(Errc::InvalidParams, "occurrence slot_us must equal the channel's collision slot");
  check(p);
  const unsigned b = log2_exact(p.slots_per_symbol);
  const std::size_t symbols = (msg.framed_size() + b - 1) / b;
  PacketFlow cover;
  for (std::size_t i = 0; i < symbols; ++i) cover.events.push_back({i * p.slots_per_symbol * p.slot_us, FlowEventKind::Send});
  const auto stego = std::get<PacketFlow>(embed(cover, msg, spec).stego);
  // A second station transmits in every slot of the message's frames, so
  // each frame the covert sender times collides with it.
  IndirectResult r{msg, {}, {}, {}, {}, {}};
  const std::uint64_t slots = symbols * p.slots_per_symbol;
  for (std::uint64_t s = 0; s < slots; ++s) r.script.actions.push_back({s * p.slot_us, ScheduleFrame{s, 0}});
  for (const auto& e : stego.events) r.script.actions.push_back({e.ts_us, ScheduleFrame{e.ts_us / p.slot_us, 1}});
  std::stable_sort(r.script.actions.begin(), r.script.actions.end(),
                   [](const ScriptAction& a, const ScriptAction& c) { return a.ts_us < c.ts_us; });
  r.trace = simulate(r.script, ch);
  r.recovered = decode_frame_corruptions(r.trace, d);
  return r;
}

/// Direct channel: the receiver gets the delivered packets and runs the
/// embedding codec's own extractor.
inline IndirectResult direct(const PatternSpec& spec, const ChannelModel& ch, const SecretMessage& msg) {
  if (codec_for(spec.pattern) != Codec::StateValue || spec.binding.target != CarrierBinding::Target::Field)
    incompatible(spec, "direct");
  const auto mode = state_value_mode(spec);
  const unsigned width = mode == StateValueMode::Blind ? 16 : 8;
  const std::size_t per_packet = mode == StateValueMode::Plain || mode == StateValueMode::Blind ? 1 : width;
  const std::size_t n = (msg.framed_size() + per_packet - 1) / per_packet;
  PacketFlow cover;
  for (std::size_t i = 0; i < n; ++i) {
    Packet p;
    p.ts_us = i * kPacketSpacingUs;
    p.seq = i + 1;
    p.fields[spec.binding.name] = {64, width, mode == StateValueMode::ReservedUnused};
    cover.packets.push_back(std::move(p));
  }
  const auto stego = std::get<PacketFlow>(embed(cover, msg, spec).stego);
  IndirectResult r{msg, {}, {}, {}, script_from_flows(cover, stego), {}};
  r.trace = simulate(r.script, ch);
  std::set<std::uint64_t> delivered;
  for (const auto& o : r.trace.observations)
    if (o.kind == ObservationKind::PacketSeen && o.seq) delivered.insert(*o.seq);
  PacketFlow received;
  for (const auto& p : stego.packets)
    if (delivered.count(p.seq)) received.packets.push_back(p);
  r.recovered = extract(received, spec);
  return r;
}

}  // namespace detail

inline IndirectResult run_indirect_channel(const PatternSpec& embed_spec, const RepresentDecoder& decoder,
                                           const ChannelModel& channel, const SecretMessage& message) {
  check(channel);
  IndirectResult r = std::visit(
      [&](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ReconnectionDecoder>) return detail::via_reconnections(embed_spec, d, channel, message);
        else if constexpr (std::is_same_v<D, RetransmissionDecoder>)
          return detail::via_retransmissions(embed_spec, d, channel, message);
        else if constexpr (std::is_same_v<D, FrameCorruptionDecoder>)
          return detail::via_frame_corruptions(embed_spec, d, channel, message);
        else return detail::direct(embed_spec, channel, message);
      },
      decoder);
  r.embed_id = format_pattern_id(embed_spec.pattern);
  r.represent_id = represent_id(decoder).value_or(r.embed_id);
  return r;
}

}  // namespace stegpat::netsim
