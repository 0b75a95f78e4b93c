#include <algorithm>

#include "channeldance/rng.hpp"
#include "channeldance/scenarios.hpp"

namespace channeldance::sim {

namespace {

// Delivered packets for one channel's scan visits, drawn from the
// channel's own substream so both phases replay identically.
uint32_t simulate_deliveries(uint64_t seed, uint8_t channel, double per,
                             uint32_t packets) {
  SplitMix64 stream(mix_seed(seed, 0x6000ull + channel));
  uint32_t delivered = 0;
  for (uint32_t i = 0; i < packets; ++i)
    if (!stream.chance(per)) ++delivered;
  return delivered;
}

}  // namespace

OptimizationResult run_optimization(const OptimizationConfig& config) {
  if (config.packets_per_channel < 100)
    throw std::invalid_argument("scan needs at least 100 packets per channel");

  std::vector<std::pair<uint8_t, double>> channels;
  for (const auto& [ch, per] : config.profile.per)
    if (ch < ble::kDataChannelCount) channels.emplace_back(ch, per);
  if (channels.size() < 2)
    throw std::invalid_argument("profile must cover at least two data channels");

  OptimizationResult result;
  result.kept_map = edge::scan_and_optimize(config.profile);

  std::vector<double> rates;
  for (const auto& [ch, per] : channels) rates.push_back(per);
  result.median_per = edge::median(rates);

  const double interval_s = config.packet_interval_ms / 1000.0;
  const double bits_per_packet = config.payload_bytes * 8.0;
  const double n_pre = static_cast<double>(channels.size());
  const double n_post = static_cast<double>(result.kept_map.count());

  // Fixed excitation rate: hopping over fewer channels visits each kept
  // channel more often, so per-channel goodput scales with 1/|map|.
  const double duration_pre_s = n_pre * config.packets_per_channel * interval_s;
  const double duration_post_s = n_post * config.packets_per_channel * interval_s;

  std::vector<double> pre_goodputs;
  std::vector<double> post_goodputs;
  for (const auto& [ch, per] : channels) {
    const uint32_t delivered_pre =
        simulate_deliveries(config.seed, ch, per, config.packets_per_channel);
    ChannelGoodput g;
    g.channel = ch;
    g.true_per = per;
    g.measured_per =
        1.0 - static_cast<double>(delivered_pre) / config.packets_per_channel;
    g.goodput_pre_kbps = delivered_pre * bits_per_packet / duration_pre_s / 1000.0;
    g.kept = result.kept_map.contains(ble::ChannelIndex{ch});
    if (g.kept) {
      const uint32_t delivered_post =
          simulate_deliveries(config.seed, ch, per, config.packets_per_channel);
      g.goodput_post_kbps = delivered_post * bits_per_packet / duration_post_s / 1000.0;
      post_goodputs.push_back(g.goodput_post_kbps);
    } else {
      g.goodput_post_kbps = 0.0;
      result.excluded.push_back(ch);
    }
    pre_goodputs.push_back(g.goodput_pre_kbps);
    result.channels.push_back(g);
  }

  result.bottom_quantile_pre_kbps = quantile(pre_goodputs, config.bottom_quantile);
  result.bottom_quantile_post_kbps = quantile(post_goodputs, config.bottom_quantile);
  result.gain = result.bottom_quantile_pre_kbps > 0.0
                    ? result.bottom_quantile_post_kbps / result.bottom_quantile_pre_kbps
                    : 0.0;
  return result;
}

}  // namespace channeldance::sim
