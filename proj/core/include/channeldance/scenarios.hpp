#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "channeldance/channel.hpp"
#include "channeldance/channel_model.hpp"
#include "channeldance/downlink.hpp"
#include "channeldance/hop.hpp"
#include "channeldance/latency.hpp"
#include "channeldance/metrics.hpp"
#include "channeldance/optimize.hpp"
#include "channeldance/world.hpp"

namespace channeldance::sim {

enum class ScenarioKind {
  Mapping,
  HopAlgorithm,
  Optimization,
  Latency,
  Throughput,
  Connection,
};

struct ScenarioInfo {
  ScenarioKind kind;
  const char* name;
  const char* description;
};

// The built-in scenario kinds, stable order.
std::span<const ScenarioInfo> scenario_registry();
const ScenarioInfo* find_scenario(const std::string& name);

// ---------------------------------------------------------------- mapping

struct MappingConfig {
  enum class Mode { NToOne, OneToN, NToN };
  Mode mode = Mode::NToN;
  uint32_t packets_per_pair = 500;
  int payload_bytes = 20;
  uint64_t excitation_interval_us = 10'000;
  std::vector<uint8_t> excitations;  // empty = all 40
  std::vector<uint8_t> targets;      // empty = all 40
  ChannelModelConfig channel;
  edge::LatencyModel latency = edge::LatencyModel::mcu();
};

struct MappingResult {
  SuccessMatrix matrix;
  std::vector<QuartileSummary> per_target;
  std::vector<QuartileSummary> per_excitation;
  double global_median = 0.0;
  double global_min = 0.0;
  uint64_t pairs = 0;
  uint64_t packets = 0;
  double runtime_seconds = 0.0;
};

MappingResult run_mapping(const MappingConfig& config);

// ---------------------------------------------------------- hop algorithm

struct HopRunConfig {
  hop::HopState hop;  // target-selection state at event 0
  uint64_t n_hops = 1000;
  ble::ChannelIndex excitation_channel{37};
  uint64_t excitation_interval_us = 10'000;
  int refresh_every = 1;
  int payload_bytes = 20;
  ChannelModelConfig channel;
  edge::LatencyModel latency = edge::LatencyModel::mcu();
};

struct HopRunResult {
  std::array<uint64_t, ble::kChannelCount> expected{};  // analytic histogram
  std::array<uint64_t, ble::kChannelCount> observed{};  // decoded in simulation
  double aggregate_rate = 0.0;      // total observed / total expected
  double min_channel_rate = 1.0;    // over channels with nonzero expectation
  bool matches_expected = false;    // observed == expected exactly
  uint64_t off_target_emissions = 0;
};

HopRunResult run_hop_algorithm(const HopRunConfig& config);

// ----------------------------------------------------------- optimization

struct OptimizationConfig {
  edge::PerProfile profile;
  double packet_interval_ms = 50.0;
  int payload_bytes = 10;
  uint32_t packets_per_channel = 200;  // scan visits per channel, >= 100
  double bottom_quantile = 0.20;
  uint64_t seed = 0;
};

struct ChannelGoodput {
  uint8_t channel;
  double true_per;
  double measured_per;          // from the scan phase
  double goodput_pre_kbps;
  double goodput_post_kbps;     // 0 for excluded channels
  bool kept;
};

struct OptimizationResult {
  std::vector<ChannelGoodput> channels;
  std::vector<uint8_t> excluded;
  ble::ChannelMap kept_map = ble::ChannelMap::all_data_channels();
  double median_per = 0.0;
  double bottom_quantile_pre_kbps = 0.0;
  double bottom_quantile_post_kbps = 0.0;
  double gain = 0.0;
};

OptimizationResult run_optimization(const OptimizationConfig& config);

// ------------------------------------------------------------- connection

struct ConnectionConfig {
  ble::ChannelIndex adv_channel{38};
  edge::ConnParams conn;
  uint32_t n_events = 20;
  ble::ChannelIndex excitation_channel{37};
  double downlink_loss = 0.0;
  uint64_t seed = 0;
  edge::LatencyModel latency = edge::LatencyModel::mcu();
};

struct ConnectionResult {
  std::vector<std::string> trace;            // sniffer-style log lines
  std::vector<uint8_t> event_channels;       // data channel per event
  std::vector<uint8_t> oracle_channels;      // hop_select reference
  bool oracle_match = false;
  uint64_t off_channel_emissions = 0;
  uint64_t downlink_frames_lost = 0;
  uint64_t write_packets_decoded = 0;
};

ConnectionResult run_connection(const ConnectionConfig& config);

// ------------------------------------------------------------- throughput

struct ThroughputConfig {
  int channels_used = 37;  // 1..37
  uint64_t excitation_interval_us = 66'471;
  int payload_bytes = 255;
  // Measured reference ratios reported next to the model, not asserted.
  double reference_vs_18ch = 3.9;
  double reference_vs_4ch = 8.3;
};

struct ThroughputResult {
  int channels_used;
  double utilization;      // channels_used / 37
  double kbps;
  double full_kbps;        // 37-channel rate with the same parameters
  double ratio_vs_full;    // full / this
};

ThroughputResult run_throughput(const ThroughputConfig& config);

// ----------------------------------------------------------------- latency

struct LatencyReportConfig {
  edge::LatencyModel model = edge::LatencyModel::mcu();
  int payload_bytes = 20;
  double plm_packet_interval_ms = 14.0;
  int plm_symbol_bits = 1;
};

struct LatencyReportResult {
  edge::DelayBreakdown breakdown{};
  double total_us = 0.0;
  double plm_ms = 0.0;
  double ratio = 0.0;  // plm delay / forwarding delay
};

LatencyReportResult run_latency(const LatencyReportConfig& config);

}  // namespace channeldance::sim
