#pragma once

#include <map>
#include <vector>

#include "channeldance/channel.hpp"

namespace channeldance::edge {

// Packet error rate per scanned target channel, each in [0,1].
struct PerProfile {
  std::map<uint8_t, double> per;  // channel index -> PER

  void set(ble::ChannelIndex ch, double rate);
  double at(ble::ChannelIndex ch) const;  // throws when not scanned
};

// Median over the given values; even counts average the middle pair.
double median(std::vector<double> values);

// Channel-map optimization: keep the data channels whose PER is at or
// below the median of the scanned data-channel PERs. Dead channels
// (PER == 1) are never hop candidates; if fewer than two channels survive,
// the two lowest-PER channels (ties to the lower index) are kept so the
// map stays hoppable. Advertising channels in the profile are ignored.
ble::ChannelMap scan_and_optimize(const PerProfile& profile);

}  // namespace channeldance::edge
