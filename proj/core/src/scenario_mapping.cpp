#include <chrono>

#include "channeldance/scenarios.hpp"

namespace channeldance::sim {

namespace {

const ScenarioInfo kRegistry[] = {
    {ScenarioKind::Mapping, "mapping",
     "excitation-to-target success matrix with quartile summaries"},
    {ScenarioKind::HopAlgorithm, "hop-algorithm",
     "CSA#1/#2 hopping histogram, simulated vs analytic"},
    {ScenarioKind::Optimization, "optimization",
     "PER scan, median channel-map optimization and goodput gain"},
    {ScenarioKind::Latency, "latency",
     "edge forwarding delay breakdown and PLM comparison"},
    {ScenarioKind::Throughput, "throughput",
     "throughput vs number of utilized excitation channels"},
    {ScenarioKind::Connection, "connection",
     "connection establishment and adaptive hopping trace"},
};

}  // namespace

std::span<const ScenarioInfo> scenario_registry() { return kRegistry; }

const ScenarioInfo* find_scenario(const std::string& name) {
  for (const auto& info : kRegistry)
    if (name == info.name) return &info;
  return nullptr;
}

MappingResult run_mapping(const MappingConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();

  std::vector<uint8_t> excitations = config.excitations;
  std::vector<uint8_t> targets = config.targets;
  if (excitations.empty())
    for (auto ch : ble::channels_by_frequency()) excitations.push_back(ch.value());
  if (targets.empty())
    for (auto ch : ble::channels_by_frequency()) targets.push_back(ch.value());

  MappingResult result;
  for (uint8_t e : excitations) {
    for (uint8_t t : targets) {
      if (e == t) continue;  // zero shift, undefined cell

      WorldConfig world;
      world.excitor.fixed_channel = ble::ChannelIndex{e};
      world.excitor.count = config.packets_per_pair;
      world.excitor.interval_us = config.excitation_interval_us;
      world.edge.latency = config.latency;
      world.edge.announce_counter = false;  // fixed excitor: channel frames
      world.tag.excitor = tag::ExcitorSchedule::fixed(ble::ChannelIndex{e});
      world.tag.targets = tag::TargetSchedule::fixed(ble::ChannelIndex{t});
      world.channel = config.channel;
      world.receivers.push_back(ReceiverSetup{ble::ChannelIndex{t}});
      world.payload_bytes = config.payload_bytes;

      const WorldStats stats = run_world(world);
      result.matrix.record_sent(ble::ChannelIndex{e}, ble::ChannelIndex{t},
                                stats.matrix.sent(ble::ChannelIndex{e}, ble::ChannelIndex{t}));
      result.matrix.record_decoded(
          ble::ChannelIndex{e}, ble::ChannelIndex{t},
          stats.matrix.decoded(ble::ChannelIndex{e}, ble::ChannelIndex{t}));
      ++result.pairs;
      result.packets += stats.emissions;
    }
  }

  result.per_target = per_target_quartiles(result.matrix);
  result.per_excitation = per_excitation_quartiles(result.matrix);
  const auto rates = result.matrix.defined_rates();
  result.global_median = quantile(rates, 0.5);
  result.global_min = quantile(rates, 0.0);
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

}  // namespace channeldance::sim
