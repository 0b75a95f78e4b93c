#include "channeldance/hop.hpp"

#include <stdexcept>

namespace channeldance::hop {

const char* algorithm_name(Algorithm a) {
  return a == Algorithm::Csa1 ? "csa1" : "csa2";
}

HopState make_csa1(uint8_t hop_increment, ChannelMap map,
                   uint8_t last_unmapped_channel, uint16_t event_counter) {
  if (hop_increment < 5 || hop_increment > 16)
    throw std::invalid_argument("hop increment must be 5-16");
  if (last_unmapped_channel >= ble::kDataChannelCount)
    throw std::invalid_argument("last unmapped channel must be 0-36");
  HopState s;
  s.algorithm = Algorithm::Csa1;
  s.hop_increment = hop_increment;
  s.last_unmapped_channel = last_unmapped_channel;
  s.event_counter = event_counter;
  s.channel_map = map;
  return s;
}

HopState make_csa2(uint32_t access_address, ChannelMap map, uint16_t event_counter) {
  HopState s;
  s.algorithm = Algorithm::Csa2;
  s.access_address = access_address;
  s.event_counter = event_counter;
  s.channel_map = map;
  return s;
}

HopResult csa1_next(const HopState& state) {
  if (state.algorithm != Algorithm::Csa1)
    throw std::invalid_argument("csa1_next on a CSA#2 state");
  const auto& used = state.channel_map.used_sorted();

  const uint8_t unmapped = static_cast<uint8_t>(
      (state.last_unmapped_channel + state.hop_increment) % ble::kDataChannelCount);

  ChannelIndex selected = ChannelIndex{unmapped};
  if (!state.channel_map.contains(selected))
    selected = used[unmapped % used.size()];

  HopState next = state;
  next.last_unmapped_channel = unmapped;
  next.event_counter = static_cast<uint16_t>(state.event_counter + 1);
  return HopResult{selected, next};
}

namespace {

// Reverse the bits inside each byte of a 16-bit value.
uint16_t csa2_perm(uint16_t v) {
  uint16_t out = 0;
  for (int i = 0; i < 8; ++i) {
    out |= static_cast<uint16_t>((v >> i & 1) << (7 - i));
    out |= static_cast<uint16_t>((v >> (8 + i) & 1) << (15 - i));
  }
  return out;
}

uint16_t csa2_mam(uint16_t a, uint16_t b) {
  return static_cast<uint16_t>(17u * a + b);
}

uint16_t csa2_prn_e(uint16_t event_counter, uint16_t channel_identifier) {
  uint16_t v = event_counter ^ channel_identifier;
  for (int round = 0; round < 3; ++round) {
    v = csa2_perm(v);
    v = csa2_mam(v, channel_identifier);
  }
  return v ^ channel_identifier;
}

}  // namespace

ChannelIndex csa2_channel(uint16_t event_counter, uint32_t access_address,
                          const ChannelMap& map) {
  const uint16_t channel_identifier =
      static_cast<uint16_t>(access_address >> 16) ^ static_cast<uint16_t>(access_address);
  const uint16_t prn_e = csa2_prn_e(event_counter, channel_identifier);

  const ChannelIndex unmapped{static_cast<uint8_t>(prn_e % ble::kDataChannelCount)};
  if (map.contains(unmapped)) return unmapped;

  const auto& used = map.used_sorted();
  const size_t index = used.size() * prn_e >> 16;
  return used[index];
}

HopResult hop_next(const HopState& state) {
  if (state.algorithm == Algorithm::Csa1) return csa1_next(state);
  HopResult r{csa2_channel(state.event_counter, state.access_address, state.channel_map),
              state};
  r.state.event_counter = static_cast<uint16_t>(state.event_counter + 1);
  return r;
}

ChannelIndex channel_at(const HopState& base, uint16_t event_counter) {
  if (base.algorithm == Algorithm::Csa2)
    return csa2_channel(event_counter, base.access_address, base.channel_map);

  // CSA#1: k steps past the base state land on last_unmapped + k * hop.
  const uint16_t steps =
      static_cast<uint16_t>(static_cast<uint16_t>(event_counter - base.event_counter) + 1);
  const uint32_t unmapped =
      (base.last_unmapped_channel + uint32_t{steps} * base.hop_increment) %
      ble::kDataChannelCount;
  const ChannelIndex candidate{static_cast<uint8_t>(unmapped)};
  if (base.channel_map.contains(candidate)) return candidate;
  const auto& used = base.channel_map.used_sorted();
  return used[unmapped % used.size()];
}

std::array<uint64_t, ble::kChannelCount> hop_histogram(const HopState& state,
                                                       uint64_t n_events) {
  if (n_events < 1) throw std::invalid_argument("n_events must be at least 1");
  std::array<uint64_t, ble::kChannelCount> counts{};
  HopState s = state;
  for (uint64_t i = 0; i < n_events; ++i) {
    const HopResult r = hop_next(s);
    ++counts[r.channel.value()];
    s = r.state;
  }
  return counts;
}

}  // namespace channeldance::hop
