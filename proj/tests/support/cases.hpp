#pragma once

// Seeded random covers for every pattern/carrier pair the codecs support.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "stegpat/stegpat.hpp"

namespace stegpat::testing {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline BitString random_bits(Rng& rng, std::size_t n) {
  BitString b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(uniform(rng, 0, 1));
  return b;
}

inline std::vector<std::uint8_t> random_bytes(Rng& rng, std::size_t n) {
  std::vector<std::uint8_t> b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(uniform(rng, 0, 255));
  return b;
}

/// Packets with increasing timestamps, distinct increasing seqs and a ttl field.
inline PacketFlow random_flow(Rng& rng, std::size_t n) {
  PacketFlow f;
  std::uint64_t t = uniform(rng, 0, 10'000), seq = uniform(rng, 1, 1000);
  for (std::size_t i = 0; i < n; ++i) {
    Packet p;
    p.ts_us = t;
    p.seq = seq++;
    p.fields["ttl"] = {uniform(rng, 0, 255), 8, false};
    p.fields["tos"] = {uniform(rng, 0, 255), 8, false};
    p.payload = random_bytes(rng, uniform(rng, 0, 24));
    f.packets.push_back(std::move(p));
    t += uniform(rng, 0, 50'000);
  }
  return f;
}

inline void add_events(Rng& rng, PacketFlow& f, std::size_t n) {
  std::uint64_t t = uniform(rng, 0, 5000);
  for (std::size_t i = 0; i < n; ++i) {
    f.events.push_back({t, static_cast<FlowEventKind>(uniform(rng, 0, 2))});
    t += uniform(rng, 0, 30'000);
  }
}

inline char32_t random_letter(Rng& rng) {
  static constexpr char32_t kExtra[] = {U'é', U'ß', U'Ж', U'中'};
  const auto r = uniform(rng, 0, 29);
  if (r < 26) return static_cast<char32_t>((uniform(rng, 0, 1) ? U'a' : U'A') + r);
  return kExtra[r - 26];
}

/// Words separated by runs of 1..3 spaces, broken into lines.
inline TextDocument random_text(Rng& rng, std::size_t words) {
  TextDocument d;
  for (std::size_t w = 0; w < words; ++w) {
    if (w > 0) {
      if (uniform(rng, 0, 7) == 0) d.chars.push_back({U'\n', {}});
      else d.chars.insert(d.chars.end(), uniform(rng, 1, 3), StyledChar{U' ', {}});
    }
    const auto len = uniform(rng, 1, 7);
    for (std::size_t k = 0; k < len; ++k) {
      StyledChar c{uniform(rng, 0, 9) == 0 ? static_cast<char32_t>(U'0' + uniform(rng, 0, 9)) : random_letter(rng), {}};
      if (uniform(rng, 0, 15) == 0) c.style.upper_lower_significant = true;
      d.chars.push_back(c);
    }
  }
  return d;
}

inline ImageBuffer random_image(Rng& rng, std::uint32_t w, std::uint32_t h) {
  ImageBuffer img{w, h, random_bytes(rng, static_cast<std::size_t>(w) * h)};
  return img;
}

struct Case {
  std::string name;        // "EN4/flow"
  std::string pattern;     // "EN4"
  CarrierType carrier;
  std::function<std::pair<CoverObject, PatternSpec>(Rng&)> make;
};

inline PatternSpec spec(const char* id, CarrierBinding b, PatternParams p, std::optional<StateValueMode> m = {}) {
  return {parse_pattern_id(id), std::move(b), std::move(p), m};
}

/// One entry per (embedding pattern, carrier) pair with a codec, plus the
/// Message Ordering hybrid.
inline std::vector<Case> all_cases() {
  using T = CarrierBinding::Target;
  std::vector<Case> cases;
  auto add = [&](std::string name, std::string pattern, CarrierType c, auto make) {
    cases.push_back({std::move(name), std::move(pattern), c, make});
  };

  add("ET1/flow", "ET1", CarrierType::Flow, [](Rng& r) {
    auto f = random_flow(r, uniform(r, 17, 120));
    add_events(r, f, uniform(r, 0, 5));
    return std::pair{CoverObject(f), spec("ET1", {}, IntervalParams{uniform(r, 100, 5000), uniform(r, 2, 3000)})};
  });
  add("ET1.1/flow", "ET1.1", CarrierType::Flow, [](Rng& r) {
    const auto lo = static_cast<std::uint32_t>(uniform(r, 1, 3));
    const auto hi = static_cast<std::uint32_t>(lo + uniform(r, 1, 3));
    auto f = random_flow(r, hi * uniform(r, 16, 60) + uniform(r, 0, 5));
    return std::pair{CoverObject(f), spec("ET1.1", {}, RateParams{uniform(r, 1000, 100'000), hi, lo})};
  });
  add("ET2/flow", "ET2", CarrierType::Flow, [](Rng& r) {
    const auto s = static_cast<std::uint32_t>(1u << uniform(r, 1, 5));
    auto f = random_flow(r, uniform(r, 0, 10));
    add_events(r, f, (16 + log2_exact(s) - 1) / log2_exact(s) + uniform(r, 0, 30));
    return std::pair{CoverObject(f), spec("ET2", {}, OccurrenceParams{uniform(r, 1, 5000), s})};
  });
  add("EN1/flow", "EN1", CarrierType::Flow, [](Rng& r) {
    const auto g = static_cast<std::uint32_t>(uniform(r, 2, 4));
    const auto base = uniform(r, 0, 50);
    PacketFlow f = random_flow(r, g * uniform(r, 16, 60) + uniform(r, 0, g - 1));
    for (std::size_t i = 0; i < f.packets.size(); ++i) f.packets[i].seq = base + i;
    return std::pair{CoverObject(f), spec("EN1", {}, LossParams{g, base})};
  });
  add("EN2/flow", "EN2", CarrierType::Flow, [](Rng& r) {
    const auto w = static_cast<std::uint32_t>(1u << uniform(r, 1, 3));
    PacketFlow f = random_flow(r, uniform(r, 16, 60));
    for (auto& p : f.packets) {
      const auto n = uniform(r, 0, 10) == 0 ? uniform(r, 0, w - 1) : w + uniform(r, 0, 3);
      for (std::size_t k = 0; k < n; ++k) p.options.push_back("O" + std::to_string(k));
      if (!p.options.empty() && uniform(r, 0, 9) != 0)
        p.options[uniform(r, 0, p.options.size() - 1)] = "M";
    }
    return std::pair{CoverObject(f), spec("EN2", CarrierBinding::option("M"), PositioningParams{w})};
  });
  add("EN2/text", "EN2", CarrierType::Text, [](Rng& r) {
    const auto w = static_cast<std::uint32_t>(1u << uniform(r, 1, 3));
    TextDocument d;
    const auto lines = uniform(r, 16, 50);
    for (std::size_t l = 0; l < lines; ++l) {
      if (l > 0) d.chars.push_back({U'\n', {}});
      const auto len = uniform(r, 0, 10) == 0 ? uniform(r, 0, w) : w + uniform(r, 0, 6);
      std::vector<StyledChar> line;
      for (std::size_t k = 0; k < len; ++k) line.push_back({random_letter(r), {}});
      if (!line.empty() && uniform(r, 0, 9) != 0) line[uniform(r, 0, line.size() - 1)].codepoint = U'*';
      d.chars.insert(d.chars.end(), line.begin(), line.end());
    }
    return std::pair{CoverObject(d), spec("EN2", CarrierBinding::marker_char(U'*'), PositioningParams{w})};
  });
  add("EN3/flow", "EN3", CarrierType::Flow, [](Rng& r) {
    const auto n0 = static_cast<std::uint32_t>(uniform(r, 1, 3));
    const auto n1 = n0 + static_cast<std::uint32_t>(uniform(r, 1, 2));
    PacketFlow f = random_flow(r, uniform(r, 16, 60));
    std::vector<Packet> frags;
    for (auto& p : f.packets) {
      const auto k = uniform(r, 1, 3);
      for (std::size_t j = 0; j < k; ++j) frags.push_back(p);
    }
    f.packets = std::move(frags);
    return std::pair{CoverObject(f), spec("EN3", {}, EnumerationParams{n0, n1})};
  });
  add("EN3/text", "EN3", CarrierType::Text, [](Rng& r) {
    TextDocument d = random_text(r, uniform(r, 24, 80));
    return std::pair{CoverObject(d), spec("EN3", CarrierBinding::of(T::Spaces), EnumerationParams{1, 2})};
  });
  add("EN4/flow", "EN4", CarrierType::Flow, [](Rng& r) {
    return std::pair{CoverObject(random_flow(r, uniform(r, 16, 120))),
                     spec("EN4", CarrierBinding::field("ttl"), StateValueParams{}, StateValueMode::Plain)};
  });
  add("EN4/image", "EN4", CarrierType::Image, [](Rng& r) {
    const auto w = static_cast<std::uint32_t>(uniform(r, 4, 16)), h = static_cast<std::uint32_t>(uniform(r, 4, 16));
    return std::pair{CoverObject(random_image(r, w, h)),
                     spec("EN4", {}, StateValueParams{}, StateValueMode::Plain)};
  });
  add("EN4.1/flow", "EN4.1", CarrierType::Flow, [](Rng& r) {
    PacketFlow f = random_flow(r, uniform(r, 4, 40));
    const auto w = static_cast<unsigned>(uniform(r, 1, 16));
    for (auto& p : f.packets) p.fields["rsv"] = {uniform(r, 0, (1u << w) - 1), w, true};
    while (f.packets.size() * w < 16) {
      Packet p = f.packets.back();
      ++p.seq;
      f.packets.push_back(p);
    }
    return std::pair{CoverObject(f), spec("EN4.1", CarrierBinding::field("rsv"), StateValueParams{})};
  });
  add("EN4.2/flow", "EN4.2", CarrierType::Flow, [](Rng& r) {
    PacketFlow f = random_flow(r, uniform(r, 2, 40));
    for (auto& p : f.packets) p.fields["id"] = {uniform(r, 0, 0xFFFF), 16, false};
    return std::pair{CoverObject(f), spec("EN4.2", CarrierBinding::field("id"), StateValueParams{uniform(r, 1, ~0ULL)})};
  });
  add("EN4.2/image", "EN4.2", CarrierType::Image, [](Rng& r) {
    const auto w = static_cast<std::uint32_t>(uniform(r, 2, 12)), h = static_cast<std::uint32_t>(uniform(r, 2, 12));
    return std::pair{CoverObject(random_image(r, w, h)), spec("EN4.2", {}, StateValueParams{uniform(r, 1, ~0ULL)})};
  });
  add("EN4.3/flow", "EN4.3", CarrierType::Flow, [](Rng& r) {
    PacketFlow f = random_flow(r, uniform(r, 16, 80));
    for (auto& p : f.packets)
      p.fields["csum"] = {uniform(r, 0, 1) ? internet_checksum(p.payload) : uniform(r, 0, 0xFFFF), 16, false};
    return std::pair{CoverObject(f), spec("EN4.3", CarrierBinding::field("csum"), StateValueParams{})};
  });
  add("EN5/flow", "EN5", CarrierType::Flow, [](Rng& r) {
    return std::pair{CoverObject(random_flow(r, uniform(r, 16, 80))), spec("EN5", {}, SizeParams{uniform(r, 1, 16)})};
  });
  add("EN5/text", "EN5", CarrierType::Text, [](Rng& r) {
    return std::pair{CoverObject(random_text(r, uniform(r, 40, 120))),
                     spec("EN5", CarrierBinding::of(T::Case), CharFeatureParams{CharFeature::Case})};
  });
  add("EN5.1/flow", "EN5.1", CarrierType::Flow, [](Rng& r) {
    return std::pair{CoverObject(random_flow(r, uniform(r, 16, 80))),
                     spec("EN5.1", CarrierBinding::of(T::Payload), SizeParams{uniform(r, 1, 16)})};
  });
  add("EN5.1/text", "EN5.1", CarrierType::Text, [](Rng& r) {
    TextDocument d;
    const auto lines = uniform(r, 16, 40);
    for (std::size_t l = 0; l < lines; ++l) {
      if (l > 0) d.chars.push_back({U'\n', {}});
      const auto len = uniform(r, 0, 30);
      for (std::size_t k = 0; k < len; ++k) d.chars.push_back({uniform(r, 0, 5) ? random_letter(r) : U' ', {}});
    }
    return std::pair{CoverObject(d), spec("EN5.1", {}, SizeParams{uniform(r, 1, 8)})};
  });
  add("EN5.2/text", "EN5.2", CarrierType::Text, [](Rng& r) {
    const bool color = uniform(r, 0, 1);
    TextDocument d = random_text(r, uniform(r, 40, 120));
    if (color)
      for (auto& c : d.chars)
        if (uniform(r, 0, 3) == 0) c.style.color_tag = static_cast<std::uint8_t>(uniform(r, 0, 5));
    return std::pair{CoverObject(d),
                     spec("EN5.2", {}, CharFeatureParams{color ? CharFeature::ColorTag : CharFeature::Case})};
  });
  add("RN6.1n/flow", "RN6.1n", CarrierType::Flow, [](Rng& r) {
    const auto n = static_cast<std::uint32_t>(uniform(r, 3, 8));
    PacketFlow f = random_flow(r, n * uniform(r, 16, 30));
    std::shuffle(f.packets.begin(), f.packets.end(), r);
    std::uint64_t t = 0;
    for (auto& p : f.packets) p.ts_us = (t += uniform(r, 0, 1000));
    return std::pair{CoverObject(f), spec("RN6.1n", {}, OrderingParams{n})};
  });
  return cases;
}

/// Draws covers until one can hold at least the length frame.
inline std::pair<CoverObject, PatternSpec> draw(const Case& c, Rng& rng) {
  for (;;) {
    auto cs = c.make(rng);
    if (capacity(cs.first, cs.second) >= kFrameBits) return cs;
  }
}

/// Random message that fits the framed budget.
inline SecretMessage fitting_message(Rng& rng, std::size_t cap, std::size_t max_bits = kMaxMessageBits) {
  const std::size_t room = std::min(cap - kFrameBits, max_bits);
  return SecretMessage{random_bits(rng, uniform(rng, 0, room))};
}

/// The 13 embedding patterns.
inline const std::vector<std::string>& embedding_ids() {
  static const std::vector<std::string> ids = {"ET1", "ET1.1", "ET2",   "EN1",   "EN2", "EN3",  "EN4",
                                               "EN4.1", "EN4.2", "EN4.3", "EN5", "EN5.1", "EN5.2"};
  return ids;
}

}  // namespace stegpat::testing
