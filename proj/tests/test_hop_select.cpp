#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>

#include "channeldance/hop.hpp"
#include "channeldance/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace channeldance;

namespace {

hop::HopState csa1_all(uint8_t hop_increment, uint8_t last = 10) {
  return hop::make_csa1(hop_increment, ble::ChannelMap::all_data_channels(), last);
}

std::vector<uint8_t> used_of(const ble::ChannelMap& map) {
  std::vector<uint8_t> used;
  for (auto ch : map.used_sorted()) used.push_back(ch.value());
  return used;
}

}  // namespace

TEST_CASE("csa1 steps by the hop increment over used channels") {
  // last=10, hop=7, everything used: 10 + 7 = 17.
  const auto r = hop::csa1_next(csa1_all(7, 10));
  CHECK(r.channel.value() == 17);
  CHECK(r.state.last_unmapped_channel == 17);
  CHECK(r.state.event_counter == 1);
}

TEST_CASE("csa1 remaps unused channels into the used list") {
  // last=30, hop=16: unmapped (30+16) mod 37 = 9information; 9 unused in
  // {17..31}, so index 9 mod 15 -> used[9] = 26.
  std::vector<uint8_t> used;
  for (uint8_t ch = 17; ch <= 31; ++ch) used.push_back(ch);
  const auto state = hop::make_csa1(16, ble::ChannelMap::from_channels(used), 30);
  const auto r = hop::csa1_next(state);
  CHECK(r.channel.value() == 26);
  CHECK(r.state.last_unmapped_channel == 9);
}

TEST_CASE("csa1 unmapped walk has period 37 for any valid increment") {
  for (uint8_t hop_increment = 5; hop_increment <= 16; ++hop_increment) {
    auto state = csa1_all(hop_increment, 0);
    std::set<uint8_t> seen;
    for (int i = 0; i < 37; ++i) {
      const auto r = hop::csa1_next(state);
      seen.insert(r.state.last_unmapped_channel);
      state = r.state;
    }
    CHECK(seen.size() == 37);
    CHECK(state.last_unmapped_channel == 0);  // back to the start
  }
}

TEST_CASE("csa1 covers every channel exactly once per period with all used") {
  const auto counts = hop::hop_histogram(csa1_all(7, 0), 37);
  for (uint8_t ch = 0; ch < 37; ++ch) CHECK(counts[ch] == 1);
  CHECK(counts[37] == 0);
}

TEST_CASE("csa1 1000-hop distribution over channels 17..31 is 81/54") {
  std::vector<uint8_t> used;
  for (uint8_t ch = 17; ch <= 31; ++ch) used.push_back(ch);
  const auto map = ble::ChannelMap::from_channels(used);

  for (uint8_t hop_increment : {5, 7, 11, 16}) {
    const auto state = hop::make_csa1(hop_increment, map, 0);
    const auto counts = hop::hop_histogram(state, 1000);
    const auto expected = oracles::csa1_histogram(0, hop_increment, used, 1000);

    uint64_t total = 0;
    for (int ch = 0; ch < 40; ++ch) {
      CHECK(counts[static_cast<size_t>(ch)] == expected[static_cast<size_t>(ch)]);
      total += counts[static_cast<size_t>(ch)];
    }
    CHECK(total == 1000);
    for (uint8_t ch = 17; ch <= 23; ++ch) {
      CHECK(counts[ch] >= 80);
      CHECK(counts[ch] <= 82);
    }
    for (uint8_t ch = 24; ch <= 31; ++ch) {
      CHECK(counts[ch] >= 53);
      CHECK(counts[ch] <= 55);
    }
  }
}

TEST_CASE("csa1 37-event balance follows the remap ranks") {
  // Over one period, channel c is hit once directly plus once per unused
  // channel whose value mod |used| equals c's rank.
  sim::SplitMix64 rng(0x37u);
  for (int trial = 0; trial < 20; ++trial) {
    uint64_t bits = 0;
    while (std::popcount(bits) < 2) bits = rng.next() & ((uint64_t{1} << 37) - 1);
    const auto map = ble::ChannelMap::from_bits(bits);
    const auto used = used_of(map);
    const uint8_t hop_increment = static_cast<uint8_t>(5 + rng.next() % 12);

    const auto counts = hop::hop_histogram(hop::make_csa1(hop_increment, map, 0), 37);
    for (size_t rank = 0; rank < used.size(); ++rank) {
      uint64_t want = 1;
      for (uint8_t u = 0; u < 37; ++u)
        if (!map.contains(ble::ChannelIndex{u}) && u % used.size() == rank) ++want;
      CHECK(counts[used[rank]] == want);
    }
  }
}

TEST_CASE("csa2 reproduces the frozen conformance vectors exactly") {
  const auto lines = fixtures::read_lines(fixtures::dir() + "/vectors/csa2_vectors.csv");
  REQUIRE(lines.size() > 400);
  size_t mismatches = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto f = fixtures::split(lines[i]);
    REQUIRE(f.size() == 4);
    const auto counter = static_cast<uint16_t>(fixtures::parse_word(f[0]));
    const auto aa = static_cast<uint32_t>(fixtures::parse_word(f[1]));
    const auto map = ble::ChannelMap::from_bits(fixtures::parse_word(f[2]));
    const auto expected = static_cast<uint8_t>(fixtures::parse_word(f[3]));
    if (hop::csa2_channel(counter, aa, map).value() != expected) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("csa2 known selections for the all-used map") {
  // Spot values for access address 0x8E89BED6 (channel identifier 0x305F),
  // all 37 data channels used.
  const auto map = ble::ChannelMap::all_data_channels();
  CHECK(hop::csa2_channel(0, 0x8E89BED6, map).value() == 25);
  CHECK(hop::csa2_channel(1, 0x8E89BED6, map).value() == 20);
  CHECK(hop::csa2_channel(2, 0x8E89BED6, map).value() == 6);
  CHECK(hop::csa2_channel(3, 0x8E89BED6, map).value() == 21);
}

TEST_CASE("csa2 always selects a used channel") {
  sim::SplitMix64 rng(0xC5A2u);
  for (int i = 0; i < 10'000; ++i) {
    uint64_t bits = 0;
    while (std::popcount(bits) < 2) bits = rng.next() & ((uint64_t{1} << 37) - 1);
    const auto map = ble::ChannelMap::from_bits(bits);
    const auto ch = hop::csa2_channel(static_cast<uint16_t>(rng.next()),
                                      static_cast<uint32_t>(rng.next()), map);
    CHECK(map.contains(ch));
  }
}

TEST_CASE("csa2 is deterministic and sensitive to the access address") {
  const auto map = ble::ChannelMap::all_data_channels();
  std::vector<uint8_t> a, b, c;
  for (uint16_t e = 0; e < 1000; ++e) {
    a.push_back(hop::csa2_channel(e, 0xA0B1C2D3, map).value());
    b.push_back(hop::csa2_channel(e, 0xA0B1C2D3, map).value());
    c.push_back(hop::csa2_channel(e, 0xA0B1C2D2, map).value());  // one bit off
  }
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("hop histograms conserve the event count") {
  const auto csa2 = hop::make_csa2(0xDEADBEEF, ble::ChannelMap::from_channels({15, 30}));
  const auto counts = hop::hop_histogram(csa2, 1000);
  CHECK(std::accumulate(counts.begin(), counts.end(), uint64_t{0}) == 1000);
  CHECK(counts[15] + counts[30] == 1000);
  CHECK_THROWS_AS(hop::hop_histogram(csa2, 0), std::invalid_argument);
}

TEST_CASE("channel_at matches stepping csa1 one event at a time") {
  std::vector<uint8_t> used = {0, 3, 9, 12, 22, 30, 36};
  const auto base = hop::make_csa1(11, ble::ChannelMap::from_channels(used), 5);
  auto state = base;
  for (uint16_t k = 0; k < 200; ++k) {
    const auto r = hop::csa1_next(state);
    CHECK(hop::channel_at(base, k) == r.channel);
    state = r.state;
  }
}

TEST_CASE("state constructors validate their fields") {
  CHECK_THROWS_AS(hop::make_csa1(4, ble::ChannelMap::all_data_channels()),
                  std::invalid_argument);
  CHECK_THROWS_AS(hop::make_csa1(17, ble::ChannelMap::all_data_channels()),
                  std::invalid_argument);
  CHECK_THROWS_AS(hop::make_csa1(7, ble::ChannelMap::all_data_channels(), 37),
                  std::invalid_argument);
  CHECK_THROWS_AS(hop::csa1_next(hop::make_csa2(1, ble::ChannelMap::all_data_channels())),
                  std::invalid_argument);
}
