#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "channeldance/channel.hpp"
#include "channeldance/channel_model.hpp"
#include "channeldance/hop.hpp"
#include "channeldance/latency.hpp"
#include "channeldance/metrics.hpp"
#include "channeldance/packet.hpp"
#include "channeldance/tag.hpp"

namespace channeldance::sim {

// The excitation source: a fixed channel or a hopping sequence where
// packet k sits on hop::channel_at(base, k).
struct ExcitorSetup {
  std::optional<hop::HopState> hop_base;  // nothing = fixed channel
  ble::ChannelIndex fixed_channel{37};
  uint64_t start_time_us = 10'000;
  uint64_t interval_us = 10'000;
  uint64_t count = 0;

  ble::ChannelIndex channel_for(uint16_t counter) const;
};

struct EdgeSetup {
  edge::LatencyModel latency = edge::LatencyModel::mcu();
  // Send a counter/channel frame every Nth excitation; the tag predicts
  // the rest itself.
  int refresh_every = 1;
  // PacketCounter frames for announced sequences, ChannelInfo otherwise.
  bool announce_counter = true;
};

struct ReceiverSetup {
  ble::ChannelIndex channel;
  uint32_t access_address = ble::kAdvAccessAddress;
  uint32_t crc_init = ble::kAdvCrcInit;
};

struct WorldConfig {
  ExcitorSetup excitor;
  EdgeSetup edge;
  tag::TagConfig tag;
  ChannelModelConfig channel;
  std::vector<ReceiverSetup> receivers;
  ble::PduType uplink_pdu = ble::PduType::AdvNonconnInd;
  int payload_bytes = 20;
  bool record_trace = false;
};

struct WorldStats {
  uint64_t excitations = 0;
  uint64_t emissions = 0;
  uint64_t skipped_emissions = 0;
  uint64_t off_target_emissions = 0;
  uint64_t downlink_frames_sent = 0;
  uint64_t downlink_frames_lost = 0;
  uint64_t deliveries = 0;
  uint64_t decodes = 0;
  uint64_t mirror_deliveries = 0;
  uint64_t mirror_decodes = 0;
  SuccessMatrix matrix;  // actual excitation channel x intended target
  std::array<uint64_t, ble::kChannelCount> intended_per_target{};
  std::array<uint64_t, ble::kChannelCount> decoded_per_target{};
  std::vector<std::string> trace;
};

// Run one excitation campaign: Start frame first, then per-excitation
// downlink frames at excitation_time - forwarding_delay (never before the
// previous excitation), excitations, backscatter, impairment draws and
// receiver decodes. Deterministic for a given config.
WorldStats run_world(const WorldConfig& config);

}  // namespace channeldance::sim
