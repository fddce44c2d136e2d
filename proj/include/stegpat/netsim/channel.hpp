#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "stegpat/covers/carriers.hpp"
#include "stegpat/error.hpp"

namespace stegpat::netsim {

struct ArqConfig {
  bool enabled = false;
  std::uint64_t timeout_us = 0;
  std::uint32_t max_retries = 0;

  friend bool operator==(const ArqConfig&, const ArqConfig&) = default;
};

struct ChannelModel {
  ArqConfig arq;
  std::uint64_t collision_slot_us = 1;
  std::set<std::uint64_t> disconnect_values;
  std::uint64_t reconnect_delay_us = 0;
  std::uint64_t rng_seed = 0;  // unused: the channel is noiseless
  std::set<std::uint64_t> clients;  // the central node's roster

  friend bool operator==(const ChannelModel&, const ChannelModel&) = default;
};

inline void check(const ChannelModel& c) {
  if (c.arq.enabled && c.arq.timeout_us == 0) throw Error(Errc::InvalidParams, "ARQ needs a positive timeout_us");
  if (c.collision_slot_us == 0) throw Error(Errc::InvalidParams, "collision_slot_us must be positive");
}

struct Send {
  Packet packet;
  friend bool operator==(const Send&, const Send&) = default;
};
struct Drop {
  std::uint64_t seq = 0;
  friend bool operator==(const Drop&, const Drop&) = default;
};
struct SendValue {
  std::uint64_t client_id = 0;
  std::uint64_t value = 0;
  friend bool operator==(const SendValue&, const SendValue&) = default;
};
struct ScheduleFrame {
  std::uint64_t slot = 0;
  std::uint64_t station = 0;
  friend bool operator==(const ScheduleFrame&, const ScheduleFrame&) = default;
};

using Action = std::variant<Send, Drop, SendValue, ScheduleFrame>;

struct ScriptAction {
  std::uint64_t ts_us = 0;
  Action action;
  friend bool operator==(const ScriptAction&, const ScriptAction&) = default;
};

struct ScenarioScript {
  std::vector<ScriptAction> actions;
  friend bool operator==(const ScenarioScript&, const ScenarioScript&) = default;
};

enum class ObservationKind { PacketSeen, RetransmissionSeen, CorruptedFrameSeen, ClientReconnected, ClientDisconnected };

inline const char* to_string(ObservationKind k) {
  switch (k) {
    case ObservationKind::PacketSeen: return "packet_seen";
    case ObservationKind::RetransmissionSeen: return "retransmission_seen";
    case ObservationKind::CorruptedFrameSeen: return "corrupted_frame_seen";
    case ObservationKind::ClientReconnected: return "client_reconnected";
    case ObservationKind::ClientDisconnected: return "client_disconnected";
  }
  return "?";
}

struct Observation {
  std::uint64_t ts_us = 0;
  ObservationKind kind = ObservationKind::PacketSeen;
  std::optional<std::uint64_t> seq;
  std::optional<std::uint64_t> client_id;
  std::optional<std::uint64_t> slot;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct ObservationTrace {
  std::vector<Observation> observations;
  friend bool operator==(const ObservationTrace&, const ObservationTrace&) = default;
};

/// Runs a script against the channel. Observations are ordered by timestamp;
/// ties keep the order in which the script caused them. Frames are resolved
/// per slot after the script has been read, at the slot's start time.
inline ObservationTrace simulate(const ScenarioScript& script, const ChannelModel& channel) {
  check(channel);
  std::vector<Observation> out;
  std::map<std::uint64_t, std::size_t> frames_per_slot;
  std::map<std::uint64_t, std::uint64_t> offline_until;  // client -> reconnect time

  for (std::size_t i = 0; i < script.actions.size(); ++i) {
    const auto& a = script.actions[i];
    if (i > 0 && a.ts_us < script.actions[i - 1].ts_us)
      throw Error(Errc::InvalidScript, "action " + std::to_string(i) + " goes back in time");
    std::visit(
        [&](const auto& act) {
          using A = std::decay_t<decltype(act)>;
          if constexpr (std::is_same_v<A, Send>) {
            out.push_back({a.ts_us, ObservationKind::PacketSeen, act.packet.seq, {}, {}});
          } else if constexpr (std::is_same_v<A, Drop>) {
            // Only the first retransmission is recorded; later retries would follow it.
            if (channel.arq.enabled && channel.arq.max_retries >= 1)
              out.push_back({a.ts_us + channel.arq.timeout_us, ObservationKind::RetransmissionSeen, act.seq, {}, {}});
          } else if constexpr (std::is_same_v<A, SendValue>) {
            if (!channel.clients.count(act.client_id))
              throw Error(Errc::InvalidScript, "unknown client " + std::to_string(act.client_id));
            if (!channel.disconnect_values.count(act.value)) return;
            auto it = offline_until.find(act.client_id);
            if (it != offline_until.end() && a.ts_us < it->second) return;
            const std::uint64_t back = a.ts_us + channel.reconnect_delay_us;
            offline_until[act.client_id] = back;
            out.push_back({a.ts_us, ObservationKind::ClientDisconnected, {}, act.client_id, {}});
            out.push_back({back, ObservationKind::ClientReconnected, {}, act.client_id, {}});
          } else {
            ++frames_per_slot[act.slot];
          }
        },
        a.action);
  }
  for (const auto& [slot, count] : frames_per_slot) {
    const std::uint64_t t = slot * channel.collision_slot_us;
    if (count >= 2) out.push_back({t, ObservationKind::CorruptedFrameSeen, {}, {}, slot});
    else out.push_back({t, ObservationKind::PacketSeen, {}, {}, slot});
  }
  std::stable_sort(out.begin(), out.end(), [](const Observation& x, const Observation& y) { return x.ts_us < y.ts_us; });
  return {std::move(out)};
}

}  // namespace stegpat::netsim
