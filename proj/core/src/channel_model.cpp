#include "channeldance/channel_model.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace channeldance::sim {

namespace {

constexpr uint64_t kDownlinkStreamId = 0xD0D0;

void validate(const ChannelModelConfig& cfg) {
  for (double p : cfg.base_per)
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("base PER must be in [0,1]");
  if (cfg.degraded_loss < 0.0 || cfg.degraded_loss > 1.0)
    throw std::invalid_argument("degraded loss must be in [0,1]");
  if (cfg.downlink_loss < 0.0 || cfg.downlink_loss > 1.0)
    throw std::invalid_argument("downlink loss must be in [0,1]");
  if (cfg.degraded_shift_low_mhz > cfg.degraded_shift_high_mhz)
    throw std::invalid_argument("degraded shift band is inverted");
}

}  // namespace

ChannelModel::ChannelModel(const ChannelModelConfig& config)
    : cfg_(config), downlink_stream_(mix_seed(config.rng_seed, kDownlinkStreamId)) {
  validate(cfg_);
}

SplitMix64& ChannelModel::pair_stream(ble::ChannelIndex excitation,
                                      ble::ChannelIndex receiver) {
  const size_t id = size_t{excitation.value()} * ble::kChannelCount + receiver.value();
  auto& slot = streams_[id];
  if (!slot) slot.emplace(mix_seed(cfg_.rng_seed, id));
  return *slot;
}

bool ChannelModel::backscatter_delivered(ble::ChannelIndex excitation,
                                         ble::ChannelIndex receiver) {
  const int shift = std::abs(ble::channel_to_frequency_mhz(receiver) -
                             ble::channel_to_frequency_mhz(excitation));
  auto& stream = pair_stream(excitation, receiver);

  if (cfg_.neighbor_2mhz_fail && shift == 2) {
    // The 2 MHz clock is modeled as unusable; burn a draw so the pair's
    // sequence does not depend on this flag.
    stream.next_unit();
    return false;
  }
  double loss = cfg_.base_per[receiver.value()];
  if (shift >= cfg_.degraded_shift_low_mhz && shift <= cfg_.degraded_shift_high_mhz &&
      cfg_.degraded_shift_high_mhz > 0)
    loss = std::max(loss, cfg_.degraded_loss);
  return !stream.chance(loss);
}

bool ChannelModel::downlink_delivered() {
  return !downlink_stream_.chance(cfg_.downlink_loss);
}

}  // namespace channeldance::sim
