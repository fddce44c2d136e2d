#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "stegpat/embed/codec.hpp"
#include "stegpat/embed/lack.hpp"
#include "support/cases.hpp"

using namespace stegpat;
using namespace stegpat::testing;
using T = CarrierBinding::Target;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return Errc::Io;
}

PacketFlow evenly_spaced(std::size_t n, std::uint64_t gap) {
  PacketFlow f;
  for (std::size_t i = 0; i < n; ++i) {
    Packet p;
    p.ts_us = i * gap;
    p.seq = i + 1;
    p.fields["ttl"] = {64, 8, false};
    f.packets.push_back(p);
  }
  return f;
}

std::vector<std::uint64_t> timestamps(const PacketFlow& f) {
  std::vector<std::uint64_t> out;
  for (const auto& p : f.packets) out.push_back(p.ts_us);
  return out;
}

std::vector<std::uint64_t> seqs(const PacketFlow& f) {
  std::vector<std::uint64_t> out;
  for (const auto& p : f.packets) out.push_back(p.seq);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Temporal codecs

TEST(Interval, SpecVector) {
  const auto cover = evenly_spaced(5, 1'000'000);
  const auto bits = bits_from_string("101");
  const auto out = interval::modulate(cover, bits, {1'000'000, 500'000});
  EXPECT_EQ(timestamps(out.stego), (std::vector<std::uint64_t>{0, 1'500'000, 2'500'000, 4'000'000, 5'000'000}));
  const auto decoded = interval::demodulate(out.stego, {1'000'000, 500'000});
  EXPECT_EQ(BitString(decoded.begin(), decoded.begin() + 3), bits);
}

TEST(Interval, AllZeroGivesUniformGaps) {
  const auto cover = evenly_spaced(6, 123);
  const auto out = interval::modulate(cover, BitString(5, 0), {1'000'000, 500'000});
  for (std::size_t i = 1; i < out.stego.packets.size(); ++i)
    EXPECT_EQ(out.stego.packets[i].ts_us - out.stego.packets[i - 1].ts_us, 1'000'000u);
}

TEST(Interval, CapacityAndErrors) {
  const auto spec1 = spec("ET1", {}, IntervalParams{1'000'000, 500'000});
  EXPECT_EQ(capacity(evenly_spaced(1, 10), spec1), 0u);
  EXPECT_EQ(capacity(evenly_spaced(2, 10), spec1), 1u);
  EXPECT_EQ(code_of([&] { embed(evenly_spaced(2, 10), SecretMessage{{1}}, spec1); }), Errc::InsufficientCapacity);
  EXPECT_EQ(code_of([&] { capacity(evenly_spaced(5, 10), spec("ET1", {}, IntervalParams{0, 5})); }),
            Errc::InvalidParams);
}

TEST(Rate, SpecVector) {
  const auto cover = evenly_spaced(8, 100'000);
  const RateParams p{1'000'000, 4, 2};
  const auto out = rate::modulate(cover, bits_from_string("10"), p);
  std::map<std::uint64_t, int> per_window;
  for (const auto& pk : out.stego.packets) ++per_window[pk.ts_us / p.window_us];
  EXPECT_EQ(per_window[0], 4);
  EXPECT_EQ(per_window[1], 2);
  const auto decoded = rate::demodulate(out.stego, p);
  ASSERT_GE(decoded.size(), 2u);
  EXPECT_EQ(decoded[0], 1);
  EXPECT_EQ(decoded[1], 0);
}

TEST(Rate, Errors) {
  EXPECT_EQ(code_of([] { rate::capacity(evenly_spaced(8, 10), {1'000'000, 3, 3}); }), Errc::InvalidParams);
  EXPECT_EQ(code_of([] { rate::modulate(PacketFlow{}, bits_from_string("1"), {1'000'000, 4, 2}); }),
            Errc::InsufficientCapacity);
}

TEST(Occurrence, SpecVector) {
  PacketFlow f;
  f.events = {{777, FlowEventKind::Send}, {900, FlowEventKind::Send}};
  const OccurrenceParams p{1000, 8};
  const auto out = occurrence::modulate(f, bits_from_string("101000"), p);
  EXPECT_GE(out.stego.events[0].ts_us, 5 * p.slot_us);
  EXPECT_LT(out.stego.events[0].ts_us, 6 * p.slot_us);
  // second frame, symbol 0 -> first slot of frame 1
  EXPECT_EQ(out.stego.events[1].ts_us / p.slot_us, 8u);
  EXPECT_EQ(occurrence::demodulate(out.stego, p), bits_from_string("101000"));
}

TEST(Occurrence, Errors) {
  EXPECT_EQ(code_of([] { occurrence::capacity(PacketFlow{}, {1000, 3}); }), Errc::InvalidParams);
  PacketFlow f;
  f.packets = evenly_spaced(50, 10).packets;
  // ET2 uses events only; packets alone give no capacity.
  EXPECT_EQ(capacity(f, spec("ET2", {}, OccurrenceParams{1000, 8})), 0u);
  EXPECT_EQ(code_of([&] { capacity(f, spec("ET2", CarrierBinding::of(T::Packets), OccurrenceParams{1000, 8})); }),
            Errc::UnknownBinding);
}

// ---------------------------------------------------------------------------
// Non-temporal codecs

TEST(Loss, SpecVector) {
  const auto cover = evenly_spaced(6, 10);
  const auto out = loss::modulate(cover, bits_from_string("10"), {3, 1});
  EXPECT_EQ(seqs(out.stego), (std::vector<std::uint64_t>{2, 3, 4, 5, 6}));
  EXPECT_EQ(loss::demodulate(out.stego, {3, 1}), bits_from_string("10"));
  EXPECT_EQ(loss::modulate(cover, bits_from_string("00"), {3, 1}).stego, cover);
}

TEST(Loss, Errors) {
  EXPECT_EQ(code_of([] { loss::capacity(evenly_spaced(6, 10), {0, 1}); }), Errc::InvalidParams);
  EXPECT_EQ(loss::capacity(evenly_spaced(7, 10), {3, 1}), 2u);
}

TEST(Positioning, FlowSpecVector) {
  PacketFlow f = evenly_spaced(1, 10);
  f.packets[0].options = {"A", "B", "C"};
  const auto b = CarrierBinding::option("A");
  const auto out = positioning::modulate(f, bits_from_string("1"), b, {2});
  EXPECT_EQ(out.stego.packets[0].options, (std::vector<std::string>{"B", "A", "C"}));
  const auto zero = positioning::modulate(out.stego, bits_from_string("0"), b, {2});
  EXPECT_EQ(zero.stego.packets[0].options.front(), "A");
  EXPECT_EQ(positioning::demodulate(out.stego, b, {2}), bits_from_string("1"));
}

TEST(Positioning, TextMarker) {
  const auto doc = TextDocument::from_ascii("ab*cd\nxyz\n*wvu");
  const auto b = CarrierBinding::marker_char(U'*');
  EXPECT_EQ(positioning::capacity(doc, b, {4}), 4u);
  const auto out = positioning::modulate(doc, bits_from_string("1100"), b, {4});
  EXPECT_EQ(out.stego.ascii(), "abc*d\nxyz\n*wvu");
  EXPECT_EQ(positioning::demodulate(out.stego, b, {4}), bits_from_string("1100"));
}

TEST(Positioning, Errors) {
  PacketFlow f = evenly_spaced(1, 10);
  f.packets[0].options = {"A", "B"};
  EXPECT_EQ(code_of([&] { positioning::capacity(f, CarrierBinding{}, {2}); }), Errc::UnknownBinding);
  EXPECT_EQ(code_of([&] { positioning::capacity(f, CarrierBinding::option("A"), {3}); }), Errc::InvalidParams);
}

TEST(Enumeration, TextSpecVector) {
  const auto doc = TextDocument::from_ascii("a b c");
  const EnumerationParams p{1, 2};
  EXPECT_EQ(enumeration::modulate(doc, bits_from_string("10"), {}, p).stego.ascii(), "a  b c");
  EXPECT_EQ(enumeration::modulate(doc, bits_from_string("00"), {}, p).stego, doc);
  const auto stego = enumeration::modulate(doc, bits_from_string("01"), {}, p).stego;
  EXPECT_EQ(stego.ascii(), "a b  c");
  EXPECT_EQ(enumeration::demodulate(stego, {}, p), bits_from_string("01"));
}

TEST(Enumeration, FlowFragments) {
  PacketFlow f = evenly_spaced(3, 100);
  f.packets[1].payload = {1, 2, 3, 4, 5};
  const EnumerationParams p{1, 3};
  const auto out = enumeration::modulate(f, bits_from_string("010"), {}, p);
  ASSERT_EQ(out.stego.packets.size(), 5u);
  EXPECT_EQ(seqs(out.stego), (std::vector<std::uint64_t>{1, 2, 2, 2, 3}));
  std::vector<std::uint8_t> merged;
  for (std::size_t i = 1; i <= 3; ++i) {
    EXPECT_EQ(out.stego.packets[i].ts_us, 100u);
    merged.insert(merged.end(), out.stego.packets[i].payload.begin(), out.stego.packets[i].payload.end());
  }
  EXPECT_EQ(merged, f.packets[1].payload);
  EXPECT_EQ(enumeration::demodulate(out.stego, {}, p), bits_from_string("010"));
}

TEST(Enumeration, Errors) {
  EXPECT_EQ(code_of([] { enumeration::capacity(TextDocument::from_ascii("a b"), {}, {2, 2}); }),
            Errc::InvalidParams);
  EXPECT_EQ(code_of([] { enumeration::capacity(TextDocument::from_ascii("a b"), CarrierBinding::of(T::Case), {1, 2}); }),
            Errc::UnknownBinding);
}

TEST(StateValue, PlainTtlAndPixel) {
  const auto f = evenly_spaced(1, 10);
  const auto b = CarrierBinding::field("ttl");
  const auto out = state_value::modulate(f, bits_from_string("1"), b, StateValueMode::Plain, {});
  EXPECT_EQ(out.stego.packets[0].fields.at("ttl").value, 65u);

  const ImageBuffer img{1, 1, {200}};
  const auto px = state_value::modulate(img, bits_from_string("0"), {}, StateValueMode::Plain, {});
  EXPECT_EQ(px.stego.pixels[0], 200);
}

TEST(StateValue, CapacityPerMode) {
  PacketFlow f = evenly_spaced(10, 10);
  for (auto& p : f.packets) {
    p.fields["rsv"] = {0, 4, true};
    p.fields["csum"] = {0, 16, false};
    p.payload = {1, 2, 3};
  }
  EXPECT_EQ(capacity(f, spec("EN4", CarrierBinding::field("ttl"), StateValueParams{}, StateValueMode::Plain)), 10u);
  EXPECT_EQ(capacity(f, spec("EN4.1", CarrierBinding::field("rsv"), StateValueParams{})), 40u);
  EXPECT_EQ(capacity(f, spec("EN4.2", CarrierBinding::field("ttl"), StateValueParams{7})), 80u);
  EXPECT_EQ(capacity(f, spec("EN4.3", CarrierBinding::field("csum"), StateValueParams{})), 10u);
  EXPECT_EQ(capacity(ImageBuffer{4, 2, std::vector<std::uint8_t>(8, 0)},
                     spec("EN4.2", {}, StateValueParams{7})),
            64u);
}

TEST(StateValue, ModeErrors) {
  PacketFlow f = evenly_spaced(4, 10);
  EXPECT_EQ(code_of([&] { capacity(f, spec("EN4.1", CarrierBinding::field("ttl"), StateValueParams{})); }),
            Errc::InvalidParams);
  EXPECT_EQ(code_of([&] { capacity(f, spec("EN4.3", CarrierBinding::field("ttl"), StateValueParams{})); }),
            Errc::InvalidParams);
  EXPECT_EQ(code_of([&] { capacity(f, spec("EN4", CarrierBinding::field("hops"), StateValueParams{})); }),
            Errc::UnknownBinding);
  EXPECT_EQ(code_of([&] { capacity(ImageBuffer{1, 1, {0}}, spec("EN4.3", {}, StateValueParams{})); }),
            Errc::UnsupportedCarrier);
  EXPECT_EQ(code_of([&] { embed(f, SecretMessage{}, spec("EN4.2", CarrierBinding::field("ttl"), StateValueParams{})); }),
            Errc::InvalidParams);
}

TEST(StateValue, RandomModeXorsKeystream) {
  PacketFlow f = evenly_spaced(3, 10);
  const auto b = CarrierBinding::field("ttl");
  const StateValueParams p{1};
  const auto bits = bits_from_string("00000000 11111111");
  const auto out = state_value::modulate(f, bits, b, StateValueMode::Random, p);
  // First 16 keystream bits of seed 1 are the top of 0x47e4ce4b896cdd1d.
  EXPECT_EQ(out.stego.packets[0].fields.at("ttl").value, 0x47u);
  EXPECT_EQ(out.stego.packets[1].fields.at("ttl").value, 0xE4u ^ 0xFFu);
  const auto back = state_value::demodulate(out.stego, b, StateValueMode::Random, p);
  EXPECT_EQ(BitString(back.begin(), back.begin() + 16), bits);
}

TEST(StateValue, InternetChecksum) {
  const std::uint8_t data[] = {0x00, 0x01, 0xf2, 0x03, 0xf4, 0xf5, 0xf6, 0xf7};
  EXPECT_EQ(internet_checksum(data), 0x220d);
  const std::uint8_t odd[] = {0x01};
  EXPECT_EQ(internet_checksum(odd), static_cast<std::uint16_t>(~0x0100));
}

TEST(StateValue, BlindCorruptsChecksumForOnes) {
  PacketFlow f = evenly_spaced(2, 10);
  for (auto& p : f.packets) {
    p.payload = {0x00, 0x01, 0xf2, 0x03, 0xf4, 0xf5, 0xf6, 0xf7};
    p.fields["csum"] = {0, 16, false};
  }
  const auto b = CarrierBinding::field("csum");
  const auto out = state_value::modulate(f, bits_from_string("01"), b, StateValueMode::Blind, {});
  EXPECT_EQ(out.stego.packets[0].fields.at("csum").value, 0x220du);
  EXPECT_EQ(out.stego.packets[1].fields.at("csum").value, static_cast<std::uint16_t>(~0x220d));
  EXPECT_EQ(state_value::demodulate(out.stego, b, StateValueMode::Blind, {}), bits_from_string("01"));
}

TEST(Size, PaddingOracle) {
  // Brute force: the smallest s' >= s whose residue mod 2q lies in the half the bit selects.
  for (std::uint64_t q = 1; q <= 9; ++q)
    for (std::uint64_t s = 0; s < 60; ++s)
      for (std::uint8_t bit = 0; bit < 2; ++bit) {
        std::uint64_t t = s;
        while (((t % (2 * q)) >= q) != (bit == 1)) ++t;
        EXPECT_EQ(size_mod::padded_size(s, bit, q), t);
        EXPECT_EQ(size_mod::size_bit(t, q), bit);
      }
  EXPECT_EQ(size_mod::padded_size(10, 1, 8), 10u);
  EXPECT_EQ(size_mod::padded_size(0, 0, 8), 0u);
  EXPECT_EQ(size_mod::padded_size(10, 0, 8), 16u);
}

TEST(Size, FlowAndTextRoundTrip) {
  PacketFlow f = evenly_spaced(3, 10);
  f.packets[0].payload.assign(10, 7);
  const auto out = size_mod::modulate(f, bits_from_string("101"), {}, {8});
  EXPECT_EQ(out.stego.packets[0].payload.size(), 10u);
  EXPECT_EQ(out.stego.packets[1].payload.size(), 0u);
  EXPECT_EQ(out.stego.packets[2].payload.size(), 8u);
  EXPECT_EQ(size_mod::demodulate(out.stego, {}, {8}), bits_from_string("101"));

  const auto doc = TextDocument::from_ascii("ab\ncdef\ng");
  const auto t = size_mod::modulate(doc, bits_from_string("110"), {}, {2});
  EXPECT_EQ(t.stego.ascii(), "ab\ncdef  \ng");
  EXPECT_EQ(size_mod::demodulate(t.stego, {}, {2}), bits_from_string("110"));
  EXPECT_EQ(code_of([] { size_mod::capacity(PacketFlow{}, {}, {0}); }), Errc::InvalidParams);
}

TEST(CharFeature, CaseSpecVector) {
  const auto doc = TextDocument::from_ascii("host");
  const CharFeatureParams p{CharFeature::Case};
  const auto b = CarrierBinding::of(T::Case);
  EXPECT_EQ(char_feature::modulate(doc, bits_from_string("1000"), b, p).stego.ascii(), "Host");
  EXPECT_EQ(char_feature::modulate(TextDocument::from_ascii("HoSt"), bits_from_string("0000"), b, p).stego.ascii(),
            "host");
  EXPECT_EQ(code_of([&] { embed(TextDocument::from_ascii("12345 678"), SecretMessage{},
                                spec("EN5.2", b, CharFeatureParams{CharFeature::Case})); }),
            Errc::InsufficientCapacity);
}

TEST(CharFeature, SignificantCaseIsLeftAlone) {
  auto doc = TextDocument::from_ascii("aBc");
  doc.chars[1].style.upper_lower_significant = true;
  const CharFeatureParams p{CharFeature::Case};
  const auto b = CarrierBinding::of(T::Case);
  EXPECT_EQ(char_feature::capacity(doc, b, p), 2u);
  EXPECT_EQ(char_feature::modulate(doc, bits_from_string("11"), b, p).stego.ascii(), "ABC");
}

TEST(CharFeature, ColorTags) {
  const auto doc = TextDocument::from_ascii("ab c");
  const CharFeatureParams p{CharFeature::ColorTag};
  const auto b = CarrierBinding::of(T::Color);
  const auto out = char_feature::modulate(doc, bits_from_string("101"), b, p);
  EXPECT_EQ(out.stego.chars[0].style.color_tag, 1);
  EXPECT_EQ(out.stego.chars[1].style.color_tag, 0);
  EXPECT_FALSE(out.stego.chars[2].style.color_tag);
  EXPECT_EQ(out.stego.chars[3].style.color_tag, 1);
  EXPECT_EQ(char_feature::demodulate(out.stego, b, p), bits_from_string("101"));
  EXPECT_EQ(code_of([&] { char_feature::capacity(doc, CarrierBinding::of(T::Case), p); }), Errc::UnknownBinding);
}

TEST(Ordering, PermutesSeqsAndKeepsTimestamps) {
  const auto f = evenly_spaced(3, 10);
  EXPECT_EQ(ordering::capacity(f, {3}), 2u);
  EXPECT_EQ(seqs(ordering::modulate(f, bits_from_string("00"), {3}).stego), (std::vector<std::uint64_t>{1, 2, 3}));
  // Oracle: the 4th permutation (index 3) of {1,2,3} in lexicographic order.
  std::vector<std::uint64_t> expected{1, 2, 3};
  for (int i = 0; i < 3; ++i) std::next_permutation(expected.begin(), expected.end());
  const auto out = ordering::modulate(f, bits_from_string("11"), {3});
  EXPECT_EQ(seqs(out.stego), expected);
  EXPECT_EQ(timestamps(out.stego), timestamps(f));
  EXPECT_EQ(ordering::demodulate(out.stego, {3}), bits_from_string("11"));
}

TEST(Ordering, CapacityThroughCodec) {
  EXPECT_EQ(capacity(evenly_spaced(4, 10), spec("RN6.1n", {}, OrderingParams{4})), 4u);
  EXPECT_EQ(capacity(evenly_spaced(9, 10), spec("RN6.1n", {}, OrderingParams{1})), 0u);
  EXPECT_EQ(code_of([] { capacity(evenly_spaced(9, 10), spec("RN6.1n", {}, OrderingParams{21})); }),
            Errc::InvalidParams);
}

// ---------------------------------------------------------------------------
// Codec front door

TEST(Codec, CapacityExamples) {
  EXPECT_EQ(capacity(evenly_spaced(10, 10), spec("EN4", CarrierBinding::field("ttl"), StateValueParams{})), 10u);
}

TEST(Codec, ReportCountsFrame) {
  Rng rng(1);
  const CoverObject cover = random_flow(rng, 64);
  const auto s = spec("EN4", CarrierBinding::field("ttl"), StateValueParams{});
  const auto r = embed(cover, parse_hex_message("0xAB"), s);
  EXPECT_EQ(r.report.bits_embedded, 24u);
  EXPECT_EQ(r.report.payload_bits, 8u);
  EXPECT_EQ(r.report.capacity_bits, 64u);
  EXPECT_EQ(extract(r.stego, s), parse_hex_message("0xAB"));
}

TEST(Codec, EmptyMessageTouchesOnlyTheFrame) {
  Rng rng(2);
  const CoverObject cover = random_flow(rng, 40);
  const auto s = spec("EN4", CarrierBinding::field("ttl"), StateValueParams{});
  const auto r = embed(cover, SecretMessage{}, s);
  for (const auto& h : r.report.handles_touched) EXPECT_LT(h.index, 16u);
  const auto& a = std::get<PacketFlow>(cover).packets;
  const auto& b = std::get<PacketFlow>(r.stego).packets;
  for (std::size_t i = 16; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_TRUE(extract(r.stego, s).bits.empty());
}

TEST(Codec, UnsupportedCarriersAndPatterns) {
  EXPECT_EQ(code_of([] { capacity(TextDocument::from_ascii("a b"), spec("ET1", {}, IntervalParams{1, 1})); }),
            Errc::UnsupportedCarrier);
  EXPECT_EQ(code_of([] { capacity(ImageBuffer{1, 1, {0}}, spec("EN4.1", {}, StateValueParams{})); }),
            Errc::UnsupportedCarrier);
  EXPECT_EQ(code_of([] { capacity(PacketFlow{}, spec("RN1.1n", {}, LossParams{3, 1})); }), Errc::InvalidParams);
  EXPECT_EQ(code_of([] { capacity(PacketFlow{}, spec("EN1", {}, IntervalParams{1, 1})); }), Errc::InvalidParams);
  EXPECT_EQ(supported_carriers(parse_pattern_id("EN5.2")), std::vector<CarrierType>{CarrierType::Text});
  EXPECT_EQ(supported_carriers(parse_pattern_id("EN4")),
            (std::vector<CarrierType>{CarrierType::Flow, CarrierType::Image}));
}

TEST(Codec, InvalidCoverRejected) {
  PacketFlow f = evenly_spaced(3, 10);
  f.packets[2].ts_us = 0;
  EXPECT_EQ(code_of([&] { capacity(f, spec("EN1", {}, LossParams{3, 1})); }), Errc::InvalidParams);
}

TEST(Codec, SpecJsonRoundTrip) {
  for (const auto& c : all_cases()) {
    Rng rng(9);
    const auto [cover, s] = c.make(rng);
    const auto back = spec_from_json(spec_to_json(s));
    EXPECT_EQ(format_pattern_id(back.pattern), format_pattern_id(s.pattern)) << c.name;
    EXPECT_EQ(back.binding, s.binding) << c.name;
    EXPECT_EQ(spec_to_json(back), spec_to_json(s)) << c.name;
  }
}

// ---------------------------------------------------------------------------
// Hybrid timing + payload

TEST(Lack, RoundTripPairs) {
  Rng rng(31);
  const lack::Spec s{{1'000, 500}, spec("EN4", CarrierBinding::field("ttl"), StateValueParams{})};
  for (int i = 0; i < 500; ++i) {
    const auto cover = random_flow(rng, uniform(rng, 40, 120));
    const std::size_t gaps = cover.packets.size() - 1;
    const SecretMessage timing{random_bits(rng, uniform(rng, 0, std::min<std::size_t>(gaps - 16, 40)))};
    const std::size_t sub = timing.framed_size();
    const SecretMessage payload{random_bits(rng, uniform(rng, 0, sub - 16))};
    const auto r = lack::embed(cover, timing, payload, s);
    const auto m = lack::extract(r.stego, s);
    ASSERT_EQ(m.timing, timing) << i;
    ASSERT_EQ(m.payload, payload) << i;
  }
}

TEST(Lack, PayloadDoesNotFitInTimedPackets) {
  Rng rng(32);
  const lack::Spec s{{1'000, 500}, spec("EN4", CarrierBinding::field("ttl"), StateValueParams{})};
  const auto cover = random_flow(rng, 60);
  const SecretMessage timing{random_bits(rng, 4)};
  const SecretMessage payload{random_bits(rng, 10)};
  EXPECT_EQ(code_of([&] { lack::embed(cover, timing, payload, s); }), Errc::InsufficientCapacity);
  const lack::Spec bad{{1'000, 500}, spec("EN1", {}, LossParams{3, 1})};
  EXPECT_EQ(code_of([&] { lack::embed(cover, timing, SecretMessage{}, bad); }), Errc::InvalidParams);
}
