#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "channeldance/channel.hpp"
#include "channeldance/crc.hpp"
#include "channeldance/packet.hpp"
#include "channeldance/rng.hpp"
#include "channeldance/whitening.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace channeldance;

namespace {

std::vector<uint8_t> random_bytes(sim::SplitMix64& rng, size_t n) {
  std::vector<uint8_t> out(n);
  for (auto& b : out) b = static_cast<uint8_t>(rng.next());
  return out;
}

ble::ChannelIndex random_channel(sim::SplitMix64& rng) {
  return ble::ChannelIndex{static_cast<uint8_t>(rng.next() % 40)};
}

}  // namespace

TEST_CASE("channel to frequency follows the 2 MHz grid") {
  CHECK(ble::channel_to_frequency_mhz(ble::ChannelIndex{37}) == 2402);
  CHECK(ble::channel_to_frequency_mhz(ble::ChannelIndex{0}) == 2404);
  CHECK(ble::channel_to_frequency_mhz(ble::ChannelIndex{10}) == 2424);
  CHECK(ble::channel_to_frequency_mhz(ble::ChannelIndex{38}) == 2426);
  CHECK(ble::channel_to_frequency_mhz(ble::ChannelIndex{11}) == 2428);
  CHECK(ble::channel_to_frequency_mhz(ble::ChannelIndex{36}) == 2478);
  CHECK(ble::channel_to_frequency_mhz(ble::ChannelIndex{39}) == 2480);
}

TEST_CASE("frequency to channel inverts the table") {
  CHECK(ble::frequency_to_channel(2402).value() == 37);
  CHECK(ble::frequency_to_channel(2426).value() == 38);
  CHECK(ble::frequency_to_channel(2480).value() == 39);
  CHECK_THROWS_AS(ble::frequency_to_channel(2403), std::domain_error);
  CHECK_THROWS_AS(ble::frequency_to_channel(2400), std::domain_error);
  CHECK_THROWS_AS(ble::frequency_to_channel(2482), std::domain_error);

  for (uint8_t ch = 0; ch < 40; ++ch) {
    const ble::ChannelIndex c{ch};
    CHECK(ble::frequency_to_channel(ble::channel_to_frequency_mhz(c)) == c);
  }
}

TEST_CASE("frequency order is 37, 0..10, 38, 11..36, 39 with 2 MHz spacing") {
  const auto& order = ble::channels_by_frequency();
  CHECK(order.front().value() == 37);
  CHECK(order[1].value() == 0);
  CHECK(order[11].value() == 10);
  CHECK(order[12].value() == 38);
  CHECK(order[13].value() == 11);
  CHECK(order.back().value() == 39);
  for (size_t i = 1; i < order.size(); ++i) {
    const int delta = ble::channel_to_frequency_mhz(order[i]) -
                      ble::channel_to_frequency_mhz(order[i - 1]);
    CHECK(delta == 2);
  }
}

TEST_CASE("channel index validates its range") {
  CHECK_THROWS_AS(ble::ChannelIndex{40}, std::invalid_argument);
  CHECK(ble::ChannelIndex{36}.is_data());
  CHECK(ble::ChannelIndex{37}.is_advertising());
}

TEST_CASE("channel map rejects undersized or out-of-range sets") {
  CHECK_THROWS_AS(ble::ChannelMap::from_channels({5}), std::invalid_argument);
  CHECK_THROWS_AS(ble::ChannelMap::from_channels({5, 37}), std::invalid_argument);
  const auto map = ble::ChannelMap::from_channels({15, 30});
  CHECK(map.count() == 2);
  CHECK(map.contains(ble::ChannelIndex{15}));
  CHECK_FALSE(map.contains(ble::ChannelIndex{16}));

  const auto bytes = map.to_bytes();
  const auto back = ble::ChannelMap::from_bytes(bytes);
  REQUIRE(back.has_value());
  CHECK(*back == map);
}

TEST_CASE("whitening register is never zero after seeding") {
  for (uint8_t ch = 0; ch < 40; ++ch) {
    const auto stream = ble::whitening_stream(ble::ChannelIndex{ch}, 127);
    CHECK(std::count(stream.begin(), stream.end(), 1) > 0);
  }
}

TEST_CASE("whitening stream matches the position-register oracle") {
  sim::SplitMix64 rng(0xB1E55EDu);
  for (int i = 0; i < 1000; ++i) {
    const auto ch = random_channel(rng);
    const size_t n = 1 + rng.next() % 256;
    CHECK(ble::whitening_stream(ch, n) == oracles::whitening_stream(ch.value(), n));
  }
}

TEST_CASE("whitening twice restores the input") {
  sim::SplitMix64 rng(0x5EEDu);
  for (int i = 0; i < 200; ++i) {
    const auto ch = random_channel(rng);
    std::vector<uint8_t> bits(rng.next() % 300);
    for (auto& b : bits) b = rng.next() & 1;
    CHECK(ble::whiten_bits(ble::whiten_bits(bits, ch), ch) == bits);
  }
}

TEST_CASE("whitening all-zero bits yields the stream itself") {
  const std::vector<uint8_t> zeros(8, 0);
  CHECK(ble::whiten_bits(zeros, ble::ChannelIndex{37}) ==
        oracles::whitening_stream(37, 8));
}

TEST_CASE("different channels whiten differently") {
  const std::vector<uint8_t> zeros(16, 0);
  CHECK(ble::whiten_bits(zeros, ble::ChannelIndex{0}) !=
        ble::whiten_bits(zeros, ble::ChannelIndex{1}));
}

TEST_CASE("byte and bit whitening agree") {
  sim::SplitMix64 rng(0xABCDu);
  for (int i = 0; i < 100; ++i) {
    const auto ch = random_channel(rng);
    const auto bytes = random_bytes(rng, 1 + rng.next() % 64);
    const auto via_bits =
        ble::bits_to_bytes(ble::whiten_bits(ble::bytes_to_bits(bytes), ch));
    CHECK(via_bits == ble::whiten_bytes(bytes, ch));
  }
}

TEST_CASE("crc24 matches the position-register oracle") {
  sim::SplitMix64 rng(0xC4Cu);
  for (int i = 0; i < 1000; ++i) {
    const auto data = random_bytes(rng, rng.next() % 64);
    const uint32_t init = static_cast<uint32_t>(rng.next()) & 0xFFFFFF;
    CHECK(ble::crc24(data, init) == oracles::crc24(data, init));
  }
}

TEST_CASE("crc24 of nothing is the preset register") {
  CHECK(ble::crc24({}, 0x555555) == oracles::crc24({}, 0x555555));
  CHECK(ble::crc24({}, 0x555555) == 0x555555);
}

TEST_CASE("crc24 reacts to any single flipped bit") {
  sim::SplitMix64 rng(0xF11AEDu);
  const auto data = random_bytes(rng, 24);
  const uint32_t reference = ble::crc24(data, ble::kAdvCrcInit);
  for (size_t byte = 0; byte < data.size(); ++byte) {
    for (int bit = 0; bit < 8; ++bit) {
      auto flipped = data;
      flipped[byte] ^= uint8_t(1) << bit;
      CHECK(ble::crc24(flipped, ble::kAdvCrcInit) != reference);
    }
  }
}

TEST_CASE("assemble/parse round-trips randomized packets") {
  sim::SplitMix64 rng(0x90124u);
  for (int i = 0; i < 300; ++i) {
    ble::LinkLayerPacket p;
    p.access_address = static_cast<uint32_t>(rng.next());
    p.pdu_type = static_cast<ble::PduType>(rng.next() % 7);
    p.payload = random_bytes(rng, rng.next() % 256);
    p.whitening_channel = random_channel(rng);
    const uint32_t init = static_cast<uint32_t>(rng.next()) & 0xFFFFFF;

    const auto onair = ble::assemble(p, init);
    const auto decoded = ble::parse(onair, p.whitening_channel, p.access_address, init);
    REQUIRE(decoded.ok());
    CHECK(decoded.packet == p);
  }
}

TEST_CASE("parsing with the wrong whitening channel fails the CRC") {
  sim::SplitMix64 rng(0xBADC0DEu);
  for (int i = 0; i < 200; ++i) {
    ble::LinkLayerPacket p;
    p.payload = random_bytes(rng, rng.next() % 200);
    p.whitening_channel = random_channel(rng);
    auto other = random_channel(rng);
    while (other == p.whitening_channel) other = random_channel(rng);

    const auto onair = ble::assemble(p);
    const auto decoded = ble::parse(onair, other);
    CHECK(decoded.status == ble::DecodeStatus::CrcFailure);
  }
}

TEST_CASE("truncated input is reported as such") {
  const std::vector<uint8_t> three_bits = {1, 0, 1};
  CHECK(ble::parse_bits(three_bits, ble::ChannelIndex{37}).status ==
        ble::DecodeStatus::Truncated);
  const std::vector<uint8_t> nine_bytes(9, 0xAA);
  CHECK(ble::parse(nine_bytes, ble::ChannelIndex{37}).status ==
        ble::DecodeStatus::Truncated);
}

TEST_CASE("a length byte that overruns the buffer fails the check") {
  ble::LinkLayerPacket p;
  p.payload = {1, 2, 3};
  const auto onair = ble::assemble(p);
  const auto shortened = std::vector<uint8_t>(onair.begin(), onair.end() - 1);
  CHECK(ble::parse(shortened, p.whitening_channel).status ==
        ble::DecodeStatus::CrcFailure);
}

TEST_CASE("oversize payloads are rejected at assembly") {
  ble::LinkLayerPacket p;
  p.payload.resize(256);
  CHECK_THROWS_AS(ble::assemble(p), std::invalid_argument);
}

TEST_CASE("single bit flips in the protected region always fail the CRC") {
  ble::LinkLayerPacket p;
  p.payload = {0xC0, 0xDA, 0x0C, 0xE0, 0x00, 0x01, 0x02, 0x01, 0x06};
  p.whitening_channel = ble::ChannelIndex{37};
  const auto onair = ble::assemble(p);

  // PDU + CRC come after preamble and access address.
  for (size_t byte = 5; byte < onair.size(); ++byte) {
    for (int bit = 0; bit < 8; ++bit) {
      auto corrupted = onair;
      corrupted[byte] ^= uint8_t(1) << bit;
      CHECK(ble::parse(corrupted, p.whitening_channel).status ==
            ble::DecodeStatus::CrcFailure);
    }
  }
  // Access address bits break sync instead.
  for (size_t byte = 1; byte < 5; ++byte) {
    auto corrupted = onair;
    corrupted[byte] ^= 1;
    CHECK(ble::parse(corrupted, p.whitening_channel).status ==
          ble::DecodeStatus::AccessMismatch);
  }
  // The preamble carries no information and is not impairment-sensitive.
  auto corrupted = onair;
  corrupted[0] ^= 1;
  CHECK(ble::parse(corrupted, p.whitening_channel).ok());
}

TEST_CASE("golden on-air vectors reproduce bit-exactly") {
  const auto lines =
      fixtures::read_lines(fixtures::dir() + "/vectors/link_layer_golden.csv");
  REQUIRE(lines.size() > 1);
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto f = fixtures::split(lines[i]);
    REQUIRE(f.size() == 7);
    ble::LinkLayerPacket p;
    p.access_address = static_cast<uint32_t>(fixtures::parse_word(f[1]));
    p.pdu_type = static_cast<ble::PduType>(fixtures::parse_word(f[2]));
    p.whitening_channel =
        ble::ChannelIndex{static_cast<uint8_t>(fixtures::parse_word(f[3]))};
    const uint32_t crc_init = static_cast<uint32_t>(fixtures::parse_word(f[4]));
    p.payload = f[5].empty() ? std::vector<uint8_t>{} : fixtures::parse_hex(f[5]);
    const auto expected_onair = fixtures::parse_hex(f[6]);

    CAPTURE(f[0]);
    CHECK(ble::assemble(p, crc_init) == expected_onair);
    const auto decoded =
        ble::parse(expected_onair, p.whitening_channel, p.access_address, crc_init);
    REQUIRE(decoded.ok());
    CHECK(decoded.packet == p);
  }
}

TEST_CASE("connect-ind payload codec round-trips") {
  ble::ConnectIndFields f;
  f.init_addr = {1, 2, 3, 4, 5, 6};
  f.adv_addr = {0xA, 0xB, 0xC, 0xD, 0xE, 0xF};
  f.access_address = 0x50123456;
  f.crc_init = 0x123456;
  f.interval_1250us = 40;
  f.channel_map = ble::ChannelMap::from_channels({15, 30});
  f.hop_increment = 7;

  const auto payload = ble::encode_connect_ind(f);
  CHECK(payload.size() == 34);
  const auto back = ble::decode_connect_ind(payload);
  REQUIRE(back.has_value());
  CHECK(back->access_address == f.access_address);
  CHECK(back->crc_init == f.crc_init);
  CHECK(back->hop_increment == 7);
  CHECK(back->channel_map == f.channel_map);

  auto bad = payload;
  bad[33] = 0x01;  // hop increment below 5
  CHECK_FALSE(ble::decode_connect_ind(bad).has_value());
  CHECK_FALSE(ble::decode_connect_ind(std::span(payload).first(10)).has_value());
}
