#include "channeldance/scenarios.hpp"

namespace channeldance::sim {

HopRunResult run_hop_algorithm(const HopRunConfig& config) {
  if (config.n_hops < 1) throw std::invalid_argument("n_hops must be at least 1");

  HopRunResult result;
  result.expected = hop::hop_histogram(config.hop, config.n_hops);

  WorldConfig world;
  world.excitor.fixed_channel = config.excitation_channel;
  world.excitor.count = config.n_hops;
  world.excitor.interval_us = config.excitation_interval_us;
  world.edge.latency = config.latency;
  world.edge.refresh_every = config.refresh_every;
  world.edge.announce_counter = true;
  world.tag.excitor = tag::ExcitorSchedule::fixed(config.excitation_channel);
  world.tag.targets = tag::TargetSchedule::hopping(config.hop);
  world.channel = config.channel;
  world.payload_bytes = config.payload_bytes;
  for (ble::ChannelIndex ch : config.hop.channel_map.used_sorted())
    world.receivers.push_back(ReceiverSetup{ch});

  const WorldStats stats = run_world(world);
  result.observed = stats.decoded_per_target;
  result.off_target_emissions = stats.off_target_emissions;

  uint64_t expected_total = 0;
  uint64_t observed_total = 0;
  result.matches_expected = true;
  for (int ch = 0; ch < ble::kChannelCount; ++ch) {
    expected_total += result.expected[static_cast<size_t>(ch)];
    observed_total += result.observed[static_cast<size_t>(ch)];
    if (result.expected[static_cast<size_t>(ch)] != result.observed[static_cast<size_t>(ch)])
      result.matches_expected = false;
    if (result.expected[static_cast<size_t>(ch)] > 0) {
      const double rate = static_cast<double>(result.observed[static_cast<size_t>(ch)]) /
                          static_cast<double>(result.expected[static_cast<size_t>(ch)]);
      if (rate < result.min_channel_rate) result.min_channel_rate = rate;
    }
  }
  result.aggregate_rate = expected_total == 0
                              ? 0.0
                              : static_cast<double>(observed_total) /
                                    static_cast<double>(expected_total);
  return result;
}

}  // namespace channeldance::sim
