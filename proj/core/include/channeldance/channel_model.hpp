#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>

#include "channeldance/channel.hpp"
#include "channeldance/rng.hpp"

namespace channeldance::sim {

// Seeded impairment model for the backscatter link and the ASK downlink.
// Every (excitation, receiver) pair draws from its own substream, so one
// pair's loss sequence never depends on what happens to another.
struct ChannelModelConfig {
  std::array<double, ble::kChannelCount> base_per{};  // loss per receiver channel
  bool neighbor_2mhz_fail = false;                    // +/-2 MHz images always fail
  int degraded_shift_low_mhz = 0;                     // inclusive band, 0/0 = off
  int degraded_shift_high_mhz = 0;
  double degraded_loss = 0.0;
  double downlink_loss = 0.0;
  uint64_t rng_seed = 0;
};

class ChannelModel {
 public:
  explicit ChannelModel(const ChannelModelConfig& config);

  // Does a backscattered image reach the receiver on `receiver`, given the
  // excitation it was mixed from?
  bool backscatter_delivered(ble::ChannelIndex excitation, ble::ChannelIndex receiver);

  bool downlink_delivered();

  const ChannelModelConfig& config() const { return cfg_; }

 private:
  SplitMix64& pair_stream(ble::ChannelIndex excitation, ble::ChannelIndex receiver);

  ChannelModelConfig cfg_;
  std::array<std::optional<SplitMix64>, ble::kChannelCount * ble::kChannelCount> streams_;
  SplitMix64 downlink_stream_;
};

}  // namespace channeldance::sim
