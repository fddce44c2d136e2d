#pragma once

#include <set>
#include <variant>
#include <vector>

#include "stegpat/bits.hpp"
#include "stegpat/embed/modulated.hpp"
#include "stegpat/embed/spec.hpp"
#include "stegpat/netsim/channel.hpp"

// Covert-receiver side of the derived representation patterns. Each decoder
// reads only the observation trace.

namespace stegpat::netsim {

struct RetransmissionDecoder {
  std::uint32_t group_size = 0;
  std::uint64_t seq_base = 1;
  friend bool operator==(const RetransmissionDecoder&, const RetransmissionDecoder&) = default;
};

struct ReconnectionDecoder {
  std::vector<std::uint64_t> client_ids;
  std::uint64_t slot_us = 0;
  friend bool operator==(const ReconnectionDecoder&, const ReconnectionDecoder&) = default;
};

struct FrameCorruptionDecoder {
  std::uint32_t slots_per_symbol = 0;
  friend bool operator==(const FrameCorruptionDecoder&, const FrameCorruptionDecoder&) = default;
};

/// The receiver sees exactly what was embedded.
struct DirectDecoder {
  friend bool operator==(const DirectDecoder&, const DirectDecoder&) = default;
};

using RepresentDecoder = std::variant<RetransmissionDecoder, ReconnectionDecoder, FrameCorruptionDecoder, DirectDecoder>;

/// Representation pattern each decoder recovers; DirectDecoder has none of its own.
inline std::optional<std::string> represent_id(const RepresentDecoder& d) {
  if (std::holds_alternative<RetransmissionDecoder>(d)) return "RN1.1n";
  if (std::holds_alternative<ReconnectionDecoder>(d)) return "RN1.2n";
  if (std::holds_alternative<FrameCorruptionDecoder>(d)) return "RT2.1n";
  return std::nullopt;
}

/// Bit k is 1 iff some sequence number of group k was retransmitted. A hole
/// before the last group means the channel lost a PDU for good, which an ARQ
/// channel never does.
inline SecretMessage decode_retransmissions(const ObservationTrace& trace, const RetransmissionDecoder& d) {
  if (d.group_size < 1) throw Error(Errc::InvalidParams, "group_size must be positive");
  std::set<std::uint64_t> seen, retransmitted;
  for (const auto& o : trace.observations) {
    if (!o.seq) continue;
    if (o.kind == ObservationKind::PacketSeen) seen.insert(*o.seq);
    if (o.kind == ObservationKind::RetransmissionSeen) retransmitted.insert(*o.seq);
  }
  std::set<std::uint64_t> all = seen;
  all.insert(retransmitted.begin(), retransmitted.end());
  BitString bits;
  if (!all.empty()) {
    const std::uint64_t last = *all.rbegin();
    for (std::uint64_t start = d.seq_base; start <= last && bits.size() < kMaxDecodedBits; start += d.group_size) {
      bool complete = true, any = false;
      for (std::uint64_t s = start; s < start + d.group_size; ++s) {
        complete = complete && all.count(s);
        any = any || retransmitted.count(s);
      }
      if (!complete) {
        if (start + d.group_size <= last)
          throw Error(Errc::FrameError, "sequence numbers missing from group starting at " + std::to_string(start) +
                                            "; the channel did not retransmit them");
        break;
      }
      bits.push_back(any ? 1 : 0);
    }
  }
  return deframe(bits);
}

/// Time is cut into slots of slot_us; within slot k the listed clients carry
/// bits k*m .. k*m+m-1 in list order. A reconnection of a client inside a
/// slot is a 1, silence is a 0, so the stream is padded with zeros forever.
inline SecretMessage decode_reconnections(const ObservationTrace& trace, const ReconnectionDecoder& d) {
  if (d.client_ids.empty()) throw Error(Errc::InvalidParams, "no client ids to poll");
  if (d.slot_us == 0) throw Error(Errc::InvalidParams, "slot_us must be positive");
  const std::size_t m = d.client_ids.size();
  BitString bits(kMaxDecodedBits, 0);
  bool any_reconnect = false, any_listed = false;
  for (const auto& o : trace.observations) {
    if (o.kind != ObservationKind::ClientReconnected || !o.client_id) continue;
    any_reconnect = true;
    auto it = std::find(d.client_ids.begin(), d.client_ids.end(), *o.client_id);
    if (it == d.client_ids.end()) continue;
    any_listed = true;
    const std::uint64_t k = o.ts_us / d.slot_us;
    const std::uint64_t idx = k * m + static_cast<std::uint64_t>(it - d.client_ids.begin());
    if (idx < bits.size()) bits[idx] = 1;
  }
  if (any_reconnect && !any_listed)
    throw Error(Errc::FrameError, "none of the polled clients ever reconnected");
  return deframe(bits);
}

/// Each corrupted frame is one symbol: its slot index modulo slots_per_symbol.
inline SecretMessage decode_frame_corruptions(const ObservationTrace& trace, const FrameCorruptionDecoder& d) {
  check(OccurrenceParams{1, d.slots_per_symbol});
  const unsigned b = log2_exact(d.slots_per_symbol);
  BitString bits;
  for (const auto& o : trace.observations) {
    if (o.kind != ObservationKind::CorruptedFrameSeen || !o.slot) continue;
    if (bits.size() >= kMaxDecodedBits) break;
    append_bits(bits, *o.slot % d.slots_per_symbol, b);
  }
  if (bits.empty()) throw Error(Errc::FrameError, "no corrupted frames observed");
  return deframe(bits);
}

inline SecretMessage decode(const ObservationTrace& trace, const RepresentDecoder& d) {
  if (auto* r = std::get_if<RetransmissionDecoder>(&d)) return decode_retransmissions(trace, *r);
  if (auto* r = std::get_if<ReconnectionDecoder>(&d)) return decode_reconnections(trace, *r);
  if (auto* r = std::get_if<FrameCorruptionDecoder>(&d)) return decode_frame_corruptions(trace, *r);
  throw Error(Errc::InvalidParams, "a direct channel is decoded from the delivered carrier, not from a trace");
}

}  // namespace stegpat::netsim
