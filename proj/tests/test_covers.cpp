#include <gtest/gtest.h>

#include "stegpat/covers/binding.hpp"
#include "stegpat/covers/cover_io.hpp"
#include "stegpat/covers/enumerate.hpp"
#include "support/cases.hpp"

using namespace stegpat;
using namespace stegpat::testing;
using K = ModifiableObjectKind;

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

}  // namespace

TEST(Glossary, KindNamesRoundTrip) {
  for (auto k : kObjectKinds) EXPECT_EQ(object_kind_from_string(to_string(k)), k);
  for (auto a : kActionKinds) EXPECT_EQ(action_kind_from_string(to_string(a)), a);
  EXPECT_FALSE(object_kind_from_string("Pixel"));
  EXPECT_TRUE(is_sub_form_of_enumeration(ActionKind::Repeating));
  EXPECT_FALSE(is_sub_form_of_enumeration(ActionKind::Positioning));
}

TEST(Binding, ParseAndFormat) {
  EXPECT_EQ(parse_binding(""), CarrierBinding{});
  EXPECT_EQ(parse_binding("field:ttl"), CarrierBinding::field("ttl"));
  EXPECT_EQ(parse_binding("option:ts"), CarrierBinding::option("ts"));
  EXPECT_EQ(parse_binding("char:Ж"), CarrierBinding::marker_char(U'Ж'));
  for (const char* s : {"default", "field:ttl", "option:mss", "packets", "events", "payload", "pixels", "chars",
                        "spaces", "lines", "case", "color", "char:*"}) {
    const auto b = parse_binding(s);
    EXPECT_EQ(parse_binding(format_binding(b)), b) << s;
  }
  EXPECT_EQ(code_of([] { parse_binding("field:"); }), Errc::UnknownBinding);
  EXPECT_EQ(code_of([] { parse_binding("char:ab"); }), Errc::UnknownBinding);
  EXPECT_EQ(code_of([] { parse_binding("colour"); }), Errc::UnknownBinding);
}

TEST(Utf8, StrictDecoding) {
  EXPECT_EQ(decode_utf8("a\xC3\xA9\xE4\xB8\xAD\xF0\x9F\x98\x80"), (std::u32string{U'a', U'é', U'中', U'\U0001F600'}));
  EXPECT_EQ(encode_utf8(decode_utf8("Ж\n中")), "Ж\n中");
  for (const char* bad : {"\xC0\xAF", "\xE0\x80\xAF", "\xED\xA0\x80", "\xF4\x90\x80\x80", "\xC3", "\x80", "\xFF"})
    EXPECT_EQ(code_of([&] { decode_utf8(bad); }), Errc::ParseError);
}

TEST(Utf8, ErrorLineNumber) {
  try {
    decode_utf8("ok\nstill ok\n\xFF");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Enumerate, FlowKinds) {
  PacketFlow f;
  f.packets = {{100, 1, {{"ttl", {64, 8, false}}}, {"a", "b"}, {1, 2}},
               {250, 2, {}, {"b"}, {}},
               {300, 3, {{"ttl", {60, 8, false}}}, {}, {9}}};
  f.events = {{10, FlowEventKind::Connect}, {40, FlowEventKind::Disconnect}};
  const CoverObject c = f;

  const auto elements = enumerate_objects(c, K::Element);
  ASSERT_EQ(elements.size(), 3u);
  EXPECT_EQ(elements[2].value, 3u);

  const auto gaps = enumerate_objects(c, K::Interval);
  ASSERT_EQ(gaps.size(), 2u);
  EXPECT_EQ(gaps[0].value, 150u);
  EXPECT_EQ(gaps[1].value, 50u);
  EXPECT_EQ(enumerate_objects(c, K::Interval, CarrierBinding::of(CarrierBinding::Target::Events))[0].value, 30u);

  const auto ttl = enumerate_objects(c, K::StateValue, CarrierBinding::field("ttl"));
  ASSERT_EQ(ttl.size(), 2u);
  EXPECT_EQ(ttl[1].index, 2u);
  EXPECT_EQ(ttl[1].width, 8u);

  const auto opt = enumerate_objects(c, K::Feature, CarrierBinding::option("b"));
  ASSERT_EQ(opt.size(), 2u);
  EXPECT_EQ(opt[0].value, 1u);
  EXPECT_EQ(opt[1].value, 0u);

  EXPECT_EQ(enumerate_objects(c, K::Event).size(), 2u);
  EXPECT_EQ(code_of([&] { enumerate_objects(c, K::StateValue, CarrierBinding::field("hop")); }), Errc::UnknownBinding);
  EXPECT_EQ(code_of([&] { enumerate_objects(c, K::Element, CarrierBinding::field("ttl")); }), Errc::UnknownBinding);
}

TEST(Enumerate, TextKinds) {
  const CoverObject c = TextDocument::from_ascii("Ab  c\nd e");
  const auto letters = enumerate_objects(c, K::Feature, CarrierBinding::of(CarrierBinding::Target::Case));
  ASSERT_EQ(letters.size(), 5u);
  EXPECT_EQ(letters[0].value, 1u);
  EXPECT_EQ(letters[1].value, 0u);

  const auto runs = enumerate_objects(c, K::Element, CarrierBinding::of(CarrierBinding::Target::Spaces));
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].index, 2u);
  EXPECT_EQ(runs[0].value, 2u);

  const auto lines = enumerate_objects(c, K::Feature, CarrierBinding::of(CarrierBinding::Target::Lines));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(code_of([&] { enumerate_objects(c, K::Interval); }), Errc::UnknownBinding);
}

TEST(Enumerate, IsPureAndStable) {
  Rng rng(3);
  const CoverObject c = random_flow(rng, 40);
  EXPECT_EQ(enumerate_objects(c, K::StateValue, CarrierBinding::field("ttl")),
            enumerate_objects(c, K::StateValue, CarrierBinding::field("ttl")));
  const CoverObject img = random_image(rng, 4, 3);
  EXPECT_EQ(enumerate_objects(img, K::StateValue).size(), 12u);
  EXPECT_EQ(code_of([&] { enumerate_objects(img, K::Event); }), Errc::UnknownBinding);
}

TEST(Validity, DetectsBrokenCovers) {
  PacketFlow f;
  f.packets = {{10, 1, {}, {}, {}}, {5, 2, {}, {}, {}}};
  EXPECT_TRUE(flow_violation(f));
  f.packets[1].ts_us = 20;
  EXPECT_FALSE(flow_violation(f));
  f.packets[1].fields["x"] = {300, 8, false};
  EXPECT_TRUE(flow_violation(f));
  f.packets[1].fields["x"] = {3, 8, false};
  f.packets[1].options = {"a", "a"};
  EXPECT_TRUE(flow_violation(f));

  EXPECT_TRUE(image_violation(ImageBuffer{2, 2, {1, 2, 3}}));
  EXPECT_TRUE(image_violation(ImageBuffer{0, 0, {}}));
  TextDocument t;
  t.chars.push_back({0xD800, {}});
  EXPECT_TRUE(text_violation(t));
}

TEST(FlowIo, RoundTrip) {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    auto f = random_flow(rng, uniform(rng, 0, 30));
    add_events(rng, f, uniform(rng, 0, 5));
    if (!f.packets.empty()) {
      f.packets[0].options = {"mss", "ts"};
      f.packets[0].fields["rsv"] = {0, 3, true};
    }
    EXPECT_EQ(load_flow(save_flow(f)), f);
  }
}

TEST(FlowIo, Errors) {
  EXPECT_EQ(code_of([] { load_flow("{\"t\":5,\"seq\":1}\n{\"t\":4,\"seq\":2}\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { load_flow("{\"t\":5}\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { load_flow("{\"t\":5,\"seq\":1,\"payload\":\"abc\"}\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { load_flow("{\"t\":5,\"seq\":1,\"fields\":{\"x\":{\"v\":256,\"w\":8}}}\n"); }),
            Errc::ParseError);
  EXPECT_EQ(code_of([] { load_flow("{\"t\":5,\"event\":\"wave\"}\n"); }), Errc::ParseError);
  try {
    load_flow("{\"t\":1,\"seq\":1}\n{\"t\":2,\"seq\":2}\nnot json\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_TRUE(load_flow("").packets.empty());
}

TEST(TextIo, RoundTripWithSidecar) {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    auto doc = random_text(rng, 30);
    doc.chars[0].style.color_tag = 1;
    const auto files = save_text(doc);
    EXPECT_FALSE(files.sidecar.empty());
    EXPECT_EQ(load_text(files.text, files.sidecar), doc);
  }
  EXPECT_TRUE(save_text(TextDocument::from_ascii("plain")).sidecar.empty());
  EXPECT_EQ(code_of([] { load_text("ab", R"({"styles":[{"i":5,"color_tag":1}]})"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { load_text("ab", R"({"styles":[{"i":0,"color_tag":300}]})"); }), Errc::ParseError);
}

TEST(ImageIo, RoundTripAndErrors) {
  Rng rng(5);
  const auto img = random_image(rng, 7, 3);
  EXPECT_EQ(load_image(save_image(img)), img);
  EXPECT_EQ(load_image("P5\n# comment\n2 1\n255\n\x01\x02"), (ImageBuffer{2, 1, {1, 2}}));
  EXPECT_EQ(code_of([] { load_image("P2\n1 1\n255\n\x01"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { load_image("P5\n2 2\n255\n\x01"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { load_image("P5\n1 1\n15\n\x01"); }), Errc::ParseError);
}
