#pragma once

#include <array>
#include <cstdint>

#include "channeldance/channel.hpp"

namespace channeldance::hop {

using ble::ChannelIndex;
using ble::ChannelMap;

enum class Algorithm : uint8_t { Csa1, Csa2 };

const char* algorithm_name(Algorithm a);

// Per-link channel-selection state. CSA#1 walks a modular sequence from
// last_unmapped_channel; CSA#2 is a pure function of the event counter,
// access address and channel map.
struct HopState {
  Algorithm algorithm = Algorithm::Csa1;
  uint8_t last_unmapped_channel = 0;  // 0-36
  uint8_t hop_increment = 5;          // 5-16
  uint16_t event_counter = 0;
  uint32_t access_address = 0;
  ChannelMap channel_map = ChannelMap::all_data_channels();
};

// Validating constructors; both throw std::invalid_argument on bad fields.
HopState make_csa1(uint8_t hop_increment, ChannelMap map,
                   uint8_t last_unmapped_channel = 0, uint16_t event_counter = 0);
HopState make_csa2(uint32_t access_address, ChannelMap map, uint16_t event_counter = 0);

struct HopResult {
  ChannelIndex channel;
  HopState state;  // event counter advanced, CSA#1 walk updated
};

// Selection for the state's current event. CSA#1 only.
HopResult csa1_next(const HopState& state);

// CSA#2 selection: channel identifier from the access address halves, three
// permute/multiply-add rounds, then used-channel remapping.
ChannelIndex csa2_channel(uint16_t event_counter, uint32_t access_address,
                          const ChannelMap& map);

// Dispatches on state.algorithm.
HopResult hop_next(const HopState& state);

// Channel selected at an arbitrary event counter, with `base` describing
// the state at its own event_counter. CSA#1 has a closed form; CSA#2 is
// stateless. The counter difference wraps modulo 2^16.
ChannelIndex channel_at(const HopState& base, uint16_t event_counter);

// Per-channel selection counts over n_events consecutive events.
std::array<uint64_t, ble::kChannelCount> hop_histogram(const HopState& state,
                                                       uint64_t n_events);

}  // namespace channeldance::hop
