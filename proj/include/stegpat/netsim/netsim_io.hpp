#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "stegpat/catalog/catalog_io.hpp"
#include "stegpat/covers/cover_io.hpp"
#include "stegpat/netsim/decoders.hpp"

// Scripts and traces are JSON Lines with the flow-trace "t" convention; the
// channel model and decoder settings are single JSON objects.

namespace stegpat::netsim {

namespace detail {

inline std::optional<std::uint64_t> opt_u64(const nlohmann::json& j, const char* key, std::size_t line) {
  if (!j.contains(key)) return std::nullopt;
  return stegpat::detail::get_u64(j, key, line);
}

inline std::set<std::uint64_t> u64_set(const nlohmann::json& j, const char* key) {
  std::set<std::uint64_t> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw ParseError(0, std::string("'") + key + "' must be an array");
  for (const auto& v : j[key]) {
    if (!v.is_number_unsigned()) throw ParseError(0, std::string("'") + key + "' must hold unsigned integers");
    out.insert(v.get<std::uint64_t>());
  }
  return out;
}

}  // namespace detail

inline ChannelModel load_channel(std::string_view text) {
  const auto j = stegpat::detail::parse_json_document(text);
  if (!j.is_object()) throw ParseError(1, "channel must be a JSON object");
  ChannelModel c;
  if (auto it = j.find("arq"); it != j.end()) {
    if (!it->is_object()) throw ParseError(0, "'arq' must be an object");
    if (auto e = it->find("enabled"); e != it->end()) {
      if (!e->is_boolean()) throw ParseError(0, "'arq.enabled' must be a boolean");
      c.arq.enabled = e->get<bool>();
    }
    c.arq.timeout_us = detail::opt_u64(*it, "timeout_us", 0).value_or(0);
    c.arq.max_retries = static_cast<std::uint32_t>(detail::opt_u64(*it, "max_retries", 0).value_or(0));
  }
  c.collision_slot_us = detail::opt_u64(j, "collision_slot_us", 0).value_or(1);
  c.disconnect_values = detail::u64_set(j, "disconnect_values");
  c.reconnect_delay_us = detail::opt_u64(j, "reconnect_delay_us", 0).value_or(0);
  c.rng_seed = detail::opt_u64(j, "rng_seed", 0).value_or(0);
  c.clients = detail::u64_set(j, "clients");
  return c;
}

inline std::string save_channel(const ChannelModel& c) {
  nlohmann::ordered_json j;
  j["arq"] = {{"enabled", c.arq.enabled}, {"timeout_us", c.arq.timeout_us}, {"max_retries", c.arq.max_retries}};
  j["collision_slot_us"] = c.collision_slot_us;
  j["disconnect_values"] = c.disconnect_values;
  j["reconnect_delay_us"] = c.reconnect_delay_us;
  j["rng_seed"] = c.rng_seed;
  j["clients"] = c.clients;
  return j.dump(2) + "\n";
}

inline ScenarioScript load_script(std::string_view text) {
  ScenarioScript s;
  stegpat::detail::for_each_line(text, [&](std::string_view raw, std::size_t line) {
    const auto j = stegpat::detail::parse_json_line(raw, line);
    const std::uint64_t t = stegpat::detail::get_u64(j, "t", line);
    const auto kind = j.contains("action") && j["action"].is_string() ? j["action"].get<std::string>() : std::string();
    Action a;
    if (kind == "send") a = Send{stegpat::detail::packet_from_json(j, line)};
    else if (kind == "drop") a = Drop{stegpat::detail::get_u64(j, "seq", line)};
    else if (kind == "send_value")
      a = SendValue{stegpat::detail::get_u64(j, "client", line), stegpat::detail::get_u64(j, "value", line)};
    else if (kind == "schedule_frame")
      a = ScheduleFrame{stegpat::detail::get_u64(j, "slot", line), detail::opt_u64(j, "station", line).value_or(0)};
    else throw ParseError(line, "unknown action '" + kind + "'");
    s.actions.push_back({t, std::move(a)});
  });
  return s;
}

inline std::string save_script(const ScenarioScript& s) {
  std::string out;
  for (const auto& a : s.actions) {
    nlohmann::ordered_json j;
    std::visit(
        [&](const auto& act) {
          using A = std::decay_t<decltype(act)>;
          if constexpr (std::is_same_v<A, Send>) {
            j = stegpat::detail::packet_to_json(act.packet);
            j.erase("t");
            nlohmann::ordered_json head;
            head["t"] = a.ts_us;
            head["action"] = "send";
            head.update(j);
            j = std::move(head);
            return;
          }
          j["t"] = a.ts_us;
          if constexpr (std::is_same_v<A, Drop>) {
            j["action"] = "drop";
            j["seq"] = act.seq;
          } else if constexpr (std::is_same_v<A, SendValue>) {
            j["action"] = "send_value";
            j["client"] = act.client_id;
            j["value"] = act.value;
          } else if constexpr (std::is_same_v<A, ScheduleFrame>) {
            j["action"] = "schedule_frame";
            j["slot"] = act.slot;
            j["station"] = act.station;
          }
        },
        a.action);
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

inline ObservationTrace load_trace(std::string_view text) {
  ObservationTrace trace;
  stegpat::detail::for_each_line(text, [&](std::string_view raw, std::size_t line) {
    const auto j = stegpat::detail::parse_json_line(raw, line);
    Observation o;
    o.ts_us = stegpat::detail::get_u64(j, "t", line);
    const auto kind = j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>() : std::string();
    bool known = false;
    for (auto k : {ObservationKind::PacketSeen, ObservationKind::RetransmissionSeen, ObservationKind::CorruptedFrameSeen,
                   ObservationKind::ClientReconnected, ObservationKind::ClientDisconnected})
      if (kind == to_string(k)) {
        o.kind = k;
        known = true;
      }
    if (!known) throw ParseError(line, "unknown observation kind '" + kind + "'");
    o.seq = detail::opt_u64(j, "seq", line);
    o.client_id = detail::opt_u64(j, "client", line);
    o.slot = detail::opt_u64(j, "slot", line);
    if (!trace.observations.empty() && o.ts_us < trace.observations.back().ts_us)
      throw ParseError(line, "NonMonotonicTimestamps: observation time goes backwards");
    trace.observations.push_back(o);
  });
  return trace;
}

inline std::string save_trace(const ObservationTrace& trace) {
  std::string out;
  for (const auto& o : trace.observations) {
    nlohmann::ordered_json j;
    j["t"] = o.ts_us;
    j["kind"] = to_string(o.kind);
    if (o.seq) j["seq"] = *o.seq;
    if (o.client_id) j["client"] = *o.client_id;
    if (o.slot) j["slot"] = *o.slot;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

/// {"decoder": "retransmissions", "group_size": 3}, {"decoder": "reconnections",
/// "client_ids": [7], "slot_us": 1000000}, {"decoder": "frame_corruptions",
/// "slots_per_symbol": 8} or {"decoder": "direct"}.
inline RepresentDecoder decoder_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("decoder") || !j["decoder"].is_string())
    throw Error(Errc::InvalidParams, "decoder spec needs a 'decoder' name");
  const auto name = j["decoder"].get<std::string>();
  auto u64 = [&](const char* key, std::optional<std::uint64_t> fallback = {}) {
    return stegpat::detail::param_u64(j, key, fallback);
  };
  if (name == "retransmissions")
    return RetransmissionDecoder{static_cast<std::uint32_t>(u64("group_size")), u64("seq_base", 1)};
  if (name == "reconnections") {
    ReconnectionDecoder d;
    if (!j.contains("client_ids") || !j["client_ids"].is_array())
      throw Error(Errc::InvalidParams, "reconnections decoder needs 'client_ids'");
    for (const auto& v : j["client_ids"]) {
      if (!v.is_number_unsigned()) throw Error(Errc::InvalidParams, "client ids must be unsigned integers");
      d.client_ids.push_back(v.get<std::uint64_t>());
    }
    d.slot_us = u64("slot_us");
    return d;
  }
  if (name == "frame_corruptions") return FrameCorruptionDecoder{static_cast<std::uint32_t>(u64("slots_per_symbol"))};
  if (name == "direct") return DirectDecoder{};
  throw Error(Errc::InvalidParams, "unknown decoder '" + name + "'");
}

inline nlohmann::json decoder_to_json(const RepresentDecoder& d) {
  return std::visit(
      [](const auto& x) -> nlohmann::json {
        using D = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<D, RetransmissionDecoder>)
          return {{"decoder", "retransmissions"}, {"group_size", x.group_size}, {"seq_base", x.seq_base}};
        else if constexpr (std::is_same_v<D, ReconnectionDecoder>)
          return {{"decoder", "reconnections"}, {"client_ids", x.client_ids}, {"slot_us", x.slot_us}};
        else if constexpr (std::is_same_v<D, FrameCorruptionDecoder>)
          return {{"decoder", "frame_corruptions"}, {"slots_per_symbol", x.slots_per_symbol}};
        else return {{"decoder", "direct"}};
      },
      d);
}

}  // namespace stegpat::netsim
