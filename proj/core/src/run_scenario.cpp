#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "channeldance/config.hpp"

namespace channeldance::sim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::ofstream open_output(const std::filesystem::path& out_dir, const std::string& rel,
                          std::vector<std::filesystem::path>& written) {
  const std::filesystem::path path = out_dir / rel;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path.string());
  written.push_back(path);
  return out;
}

void write_json(const std::filesystem::path& out_dir, const std::string& rel,
                const ordered_json& doc, std::vector<std::filesystem::path>& written) {
  auto out = open_output(out_dir, rel, written);
  out << doc.dump(2) << '\n';
}

struct AssertContext {
  std::vector<AssertOutcome>& outcomes;

  void check(bool passed, const std::string& text) {
    outcomes.push_back(AssertOutcome{text, passed});
  }
};

std::string fmt(double v) { return format_fixed(v, 4); }

// ------------------------------------------------------------------ mapping

void mapping_band_stats(const MappingResult& result, const ChannelModelConfig& cfg,
                        double& neighbor_max, double& band_mean, uint64_t& band_cells) {
  neighbor_max = 0.0;
  double band_sum = 0.0;
  band_cells = 0;
  for (ble::ChannelIndex e : ble::channels_by_frequency()) {
    for (ble::ChannelIndex t : ble::channels_by_frequency()) {
      const auto r = result.matrix.rate(e, t);
      if (!r) continue;
      const int shift = std::abs(ble::channel_to_frequency_mhz(t) -
                                 ble::channel_to_frequency_mhz(e));
      if (shift == 2 && *r > neighbor_max) neighbor_max = *r;
      if (cfg.degraded_shift_high_mhz > 0 && shift >= cfg.degraded_shift_low_mhz &&
          shift <= cfg.degraded_shift_high_mhz) {
        band_sum += *r;
        ++band_cells;
      }
    }
  }
  band_mean = band_cells == 0 ? 0.0 : band_sum / static_cast<double>(band_cells);
}

RunReport run_mapping_scenario(const ScenarioConfig& cfg,
                               const std::filesystem::path& out_dir) {
  RunReport report;
  report.kind = cfg.kind;
  const MappingResult result = run_mapping(*cfg.mapping);

  for (const auto& [name, rel] : cfg.outputs) {
    if (name == "matrix_csv") {
      auto out = open_output(out_dir, rel, report.written);
      result.matrix.write_csv(out);
    } else if (name == "target_quartiles_csv") {
      auto out = open_output(out_dir, rel, report.written);
      write_quartiles_csv(out, result.per_target, "target");
    } else if (name == "excitation_quartiles_csv") {
      auto out = open_output(out_dir, rel, report.written);
      write_quartiles_csv(out, result.per_excitation, "excitation");
    } else if (name == "summary_json") {
      double neighbor_max, band_mean;
      uint64_t band_cells;
      mapping_band_stats(result, cfg.mapping->channel, neighbor_max, band_mean,
                         band_cells);
      ordered_json doc;
      doc["scenario"] = "mapping";
      doc["seed"] = cfg.seed;
      doc["packets_per_pair"] = cfg.mapping->packets_per_pair;
      doc["pairs"] = result.pairs;
      doc["packets"] = result.packets;
      doc["global_median"] = result.global_median;
      doc["global_min"] = result.global_min;
      doc["neighbor_2mhz_max_rate"] = neighbor_max;
      if (band_cells > 0) {
        doc["degraded_band"] = {{"low_mhz", cfg.mapping->channel.degraded_shift_low_mhz},
                                {"high_mhz", cfg.mapping->channel.degraded_shift_high_mhz},
                                {"cells", band_cells},
                                {"mean_rate", band_mean}};
      }
      write_json(out_dir, rel, doc, report.written);
    }
  }

  if (!cfg.assert_json.empty()) {
    report.asserts_evaluated = true;
    AssertContext a{report.asserts};
    const json spec = json::parse(cfg.assert_json);
    double neighbor_max, band_mean;
    uint64_t band_cells;
    mapping_band_stats(result, cfg.mapping->channel, neighbor_max, band_mean, band_cells);
    if (spec.contains("expect_all_ones") && spec["expect_all_ones"].get<bool>())
      a.check(result.global_min == 1.0, "all defined cells decode at 1.000");
    if (spec.contains("min_global_median")) {
      const double want = spec["min_global_median"].get<double>();
      a.check(result.global_median >= want, "global median " + fmt(result.global_median) +
                                                " >= " + fmt(want));
    }
    if (spec.contains("neighbor_cells_zero") && spec["neighbor_cells_zero"].get<bool>())
      a.check(neighbor_max == 0.0, "all +/-2 MHz cells are 0.000");
    if (spec.contains("max_degraded_band_mean")) {
      const double want = spec["max_degraded_band_mean"].get<double>();
      a.check(band_cells > 0 && band_mean <= want,
              "degraded band mean " + fmt(band_mean) + " <= " + fmt(want));
    }
    if (spec.contains("max_runtime_seconds")) {
      const double want = spec["max_runtime_seconds"].get<double>();
      a.check(result.runtime_seconds < want,
              "runtime " + fmt(result.runtime_seconds) + "s < " + fmt(want) + "s");
    }
  }
  return report;
}

// -------------------------------------------------------------------- hop

RunReport run_hop_scenario(const ScenarioConfig& cfg,
                           const std::filesystem::path& out_dir) {
  RunReport report;
  report.kind = cfg.kind;
  const HopRunResult result = run_hop_algorithm(*cfg.hop);

  for (const auto& [name, rel] : cfg.outputs) {
    if (name == "histogram_csv") {
      auto out = open_output(out_dir, rel, report.written);
      out << "channel,expected,observed,delivery_rate\n";
      for (int ch = 0; ch < ble::kChannelCount; ++ch) {
        const uint64_t e = result.expected[static_cast<size_t>(ch)];
        const uint64_t o = result.observed[static_cast<size_t>(ch)];
        if (e == 0 && o == 0) continue;
        out << ch << ',' << e << ',' << o << ','
            << (e ? format_fixed(static_cast<double>(o) / static_cast<double>(e), 4)
                  : "NA")
            << '\n';
      }
    } else if (name == "summary_json") {
      ordered_json doc;
      doc["scenario"] = "hop-algorithm";
      doc["seed"] = cfg.seed;
      doc["algorithm"] = hop::algorithm_name(cfg.hop->hop.algorithm);
      doc["n_hops"] = cfg.hop->n_hops;
      doc["aggregate_rate"] = result.aggregate_rate;
      doc["min_channel_rate"] = result.min_channel_rate;
      doc["matches_expected"] = result.matches_expected;
      doc["off_target_emissions"] = result.off_target_emissions;
      write_json(out_dir, rel, doc, report.written);
    }
  }

  if (!cfg.assert_json.empty()) {
    report.asserts_evaluated = true;
    AssertContext a{report.asserts};
    const json spec = json::parse(cfg.assert_json);
    if (spec.contains("expect_exact") && spec["expect_exact"].get<bool>())
      a.check(result.matches_expected, "observed histogram equals analytic histogram");
    if (spec.contains("min_channel_rate")) {
      const double want = spec["min_channel_rate"].get<double>();
      a.check(result.min_channel_rate >= want,
              "min per-channel delivery " + fmt(result.min_channel_rate) + " >= " +
                  fmt(want));
    }
    if (spec.contains("min_aggregate_rate")) {
      const double want = spec["min_aggregate_rate"].get<double>();
      a.check(result.aggregate_rate >= want,
              "aggregate delivery " + fmt(result.aggregate_rate) + " >= " + fmt(want));
    }
    if (spec.contains("expected_count_bands")) {
      for (const auto& band : spec["expected_count_bands"]) {
        const uint64_t count = band["count"].get<uint64_t>();
        const uint64_t tol = band["tol"].get<uint64_t>();
        bool ok = true;
        for (const auto& chv : band["channels"]) {
          const auto ch = chv.get<size_t>();
          const uint64_t e = result.expected[ch];
          if (e + tol < count || e > count + tol) ok = false;
        }
        a.check(ok, "analytic counts within " + std::to_string(count) + "+/-" +
                        std::to_string(tol) + " on configured channels");
      }
    }
  }
  return report;
}

// ----------------------------------------------------------- optimization

RunReport run_optimization_scenario(const ScenarioConfig& cfg,
                                    const std::filesystem::path& out_dir) {
  RunReport report;
  report.kind = cfg.kind;
  const OptimizationResult result = run_optimization(*cfg.optimization);

  for (const auto& [name, rel] : cfg.outputs) {
    if (name == "goodput_csv") {
      auto out = open_output(out_dir, rel, report.written);
      out << "channel,true_per,measured_per,goodput_pre_kbps,goodput_post_kbps,kept\n";
      for (const auto& c : result.channels) {
        out << int{c.channel} << ',' << format_fixed(c.true_per, 4) << ','
            << format_fixed(c.measured_per, 4) << ','
            << format_fixed(c.goodput_pre_kbps, 4) << ','
            << format_fixed(c.goodput_post_kbps, 4) << ',' << (c.kept ? 1 : 0) << '\n';
      }
    } else if (name == "summary_json") {
      ordered_json doc;
      doc["scenario"] = "optimization";
      doc["seed"] = cfg.seed;
      doc["median_per"] = result.median_per;
      doc["excluded"] = result.excluded;
      ordered_json kept = ordered_json::array();
      for (auto ch : result.kept_map.used_sorted()) kept.push_back(ch.value());
      doc["kept"] = kept;
      doc["bottom_quantile"] = cfg.optimization->bottom_quantile;
      doc["bottom_quantile_pre_kbps"] = result.bottom_quantile_pre_kbps;
      doc["bottom_quantile_post_kbps"] = result.bottom_quantile_post_kbps;
      doc["gain"] = result.gain;
      write_json(out_dir, rel, doc, report.written);
    }
  }

  if (!cfg.assert_json.empty()) {
    report.asserts_evaluated = true;
    AssertContext a{report.asserts};
    const json spec = json::parse(cfg.assert_json);
    if (spec.contains("min_gain")) {
      const double want = spec["min_gain"].get<double>();
      a.check(result.gain >= want,
              "bottom-quantile goodput gain " + fmt(result.gain) + " >= " + fmt(want));
    }
    if (spec.contains("expect_gain")) {
      const double want = spec["expect_gain"].get<double>();
      a.check(std::abs(result.gain - want) < 1e-12,
              "gain " + fmt(result.gain) + " == " + fmt(want));
    }
    if (spec.contains("exclusion_matches_median_split") &&
        spec["exclusion_matches_median_split"].get<bool>()) {
      bool ok = true;
      for (const auto& c : result.channels) {
        const bool should_keep = c.true_per <= result.median_per && c.true_per < 1.0;
        if (c.kept != should_keep) ok = false;
      }
      a.check(ok, "excluded set is exactly the channels with PER above the median");
    }
  }
  return report;
}

// ---------------------------------------------------------------- latency

RunReport run_latency_scenario(const ScenarioConfig& cfg,
                               const std::filesystem::path& out_dir) {
  RunReport report;
  report.kind = cfg.kind;
  const LatencyReportResult result = run_latency(*cfg.latency);

  for (const auto& [name, rel] : cfg.outputs) {
    if (name == "breakdown_json") {
      ordered_json doc;
      doc["scenario"] = "latency";
      doc["payload_bytes"] = cfg.latency->payload_bytes;
      doc["components_us"] = {
          {"ble_rx_chain", result.breakdown.ble_rx_chain_us},
          {"uart", result.breakdown.uart_us},
          {"controller_forward", result.breakdown.controller_forward_us},
          {"ask_tx_chain", result.breakdown.ask_tx_chain_us},
          {"spi", result.breakdown.spi_us},
          {"tag_decode", result.breakdown.tag_decode_us},
          {"clock_reconfig", result.breakdown.clock_reconfig_us},
      };
      doc["total_us"] = result.total_us;
      doc["plm"] = {{"packet_interval_ms", cfg.latency->plm_packet_interval_ms},
                    {"symbol_bits", cfg.latency->plm_symbol_bits},
                    {"delay_ms", result.plm_ms},
                    {"ratio_vs_forwarding", result.ratio}};
      write_json(out_dir, rel, doc, report.written);
    }
  }

  if (!cfg.assert_json.empty()) {
    report.asserts_evaluated = true;
    AssertContext a{report.asserts};
    const json spec = json::parse(cfg.assert_json);
    if (spec.contains("total_us")) {
      const double want = spec["total_us"].get<double>();
      const double tol = spec.contains("total_tol_frac")
                             ? spec["total_tol_frac"].get<double>()
                             : 0.0;
      a.check(std::abs(result.total_us - want) <= want * tol,
              "total " + fmt(result.total_us) + " us within " + fmt(100 * tol) + "% of " +
                  fmt(want));
    }
    const double sum = result.breakdown.ble_rx_chain_us + result.breakdown.uart_us +
                       result.breakdown.controller_forward_us +
                       result.breakdown.ask_tx_chain_us + result.breakdown.spi_us +
                       result.breakdown.tag_decode_us +
                       result.breakdown.clock_reconfig_us;
    a.check(sum == result.total_us, "breakdown components sum exactly to the total");
    if (spec.contains("plm_ms")) {
      const double want = spec["plm_ms"].get<double>();
      a.check(std::abs(result.plm_ms - want) < 1e-9,
              "PLM delay " + fmt(result.plm_ms) + " ms == " + fmt(want));
    }
    if (spec.contains("plm_reference_ms")) {
      const double ref = spec["plm_reference_ms"].get<double>();
      const double plus = spec.contains("plm_tol_plus")
                              ? spec["plm_tol_plus"].get<double>()
                              : 0.15;
      const double minus = spec.contains("plm_tol_minus")
                               ? spec["plm_tol_minus"].get<double>()
                               : 0.05;
      a.check(result.plm_ms >= ref * (1.0 - minus) && result.plm_ms <= ref * (1.0 + plus),
              "PLM delay " + fmt(result.plm_ms) + " ms within -" + fmt(100 * minus) +
                  "%/+" + fmt(100 * plus) + "% of " + fmt(ref));
    }
    if (spec.contains("min_ratio")) {
      const double want = spec["min_ratio"].get<double>();
      a.check(result.ratio >= want,
              "PLM/forwarding ratio " + fmt(result.ratio) + "x >= " + fmt(want) + "x");
    }
  }
  return report;
}

// -------------------------------------------------------------- throughput

RunReport run_throughput_scenario(const ScenarioConfig& cfg,
                                  const std::filesystem::path& out_dir) {
  RunReport report;
  report.kind = cfg.kind;
  const ThroughputResult result = run_throughput(*cfg.throughput);

  for (const auto& [name, rel] : cfg.outputs) {
    if (name == "report_json") {
      ordered_json doc;
      doc["scenario"] = "throughput";
      doc["channels_used"] = result.channels_used;
      doc["utilization"] = result.utilization;
      doc["kbps"] = result.kbps;
      doc["full_kbps"] = result.full_kbps;
      doc["ratio_vs_full"] = result.ratio_vs_full;
      doc["measured_reference"] = {{"vs_18ch", cfg.throughput->reference_vs_18ch},
                                   {"vs_4ch", cfg.throughput->reference_vs_4ch}};
      write_json(out_dir, rel, doc, report.written);
    } else if (name == "sweep_csv") {
      auto out = open_output(out_dir, rel, report.written);
      out << "channels_used,kbps,ratio_vs_full\n";
      for (int n = 1; n <= ble::kDataChannelCount; ++n) {
        ThroughputConfig sweep = *cfg.throughput;
        sweep.channels_used = n;
        const ThroughputResult r = run_throughput(sweep);
        out << n << ',' << format_fixed(r.kbps, 4) << ','
            << format_fixed(r.ratio_vs_full, 4) << '\n';
      }
    }
  }

  if (!cfg.assert_json.empty()) {
    report.asserts_evaluated = true;
    AssertContext a{report.asserts};
    const json spec = json::parse(cfg.assert_json);
    if (spec.contains("expect_kbps")) {
      const double want = spec["expect_kbps"].get<double>();
      const double tol =
          spec.contains("kbps_tol") ? spec["kbps_tol"].get<double>() : 0.01;
      a.check(std::abs(result.kbps - want) <= tol,
              "throughput " + fmt(result.kbps) + " kbps within " + fmt(tol) + " of " +
                  fmt(want));
    }
    if (spec.contains("expect_ratio_vs_full")) {
      const double want = spec["expect_ratio_vs_full"].get<double>();
      const double tol =
          spec.contains("ratio_tol") ? spec["ratio_tol"].get<double>() : 1e-9;
      a.check(std::abs(result.ratio_vs_full - want) <= tol,
              "ratio vs full " + fmt(result.ratio_vs_full) + " == " + fmt(want));
    }
  }
  return report;
}

// -------------------------------------------------------------- connection

RunReport run_connection_scenario(const ScenarioConfig& cfg,
                                  const std::filesystem::path& out_dir) {
  RunReport report;
  report.kind = cfg.kind;
  const ConnectionResult result = run_connection(*cfg.connection);

  for (const auto& [name, rel] : cfg.outputs) {
    if (name == "trace_log") {
      auto out = open_output(out_dir, rel, report.written);
      for (const auto& line : result.trace) out << line << '\n';
    } else if (name == "summary_json") {
      ordered_json doc;
      doc["scenario"] = "connection";
      doc["seed"] = cfg.seed;
      doc["adv_channel"] = cfg.connection->adv_channel.value();
      doc["n_events"] = cfg.connection->n_events;
      doc["event_channels"] = result.event_channels;
      doc["oracle_channels"] = result.oracle_channels;
      doc["oracle_match"] = result.oracle_match;
      doc["off_channel_emissions"] = result.off_channel_emissions;
      doc["downlink_frames_lost"] = result.downlink_frames_lost;
      doc["write_packets_decoded"] = result.write_packets_decoded;
      write_json(out_dir, rel, doc, report.written);
    }
  }

  if (!cfg.assert_json.empty()) {
    report.asserts_evaluated = true;
    AssertContext a{report.asserts};
    const json spec = json::parse(cfg.assert_json);
    if (spec.contains("oracle_match") && spec["oracle_match"].get<bool>())
      a.check(result.oracle_match, "every event channel equals the CSA#1 oracle");
    if (spec.contains("max_off_channel")) {
      const auto want = spec["max_off_channel"].get<uint64_t>();
      a.check(result.off_channel_emissions <= want,
              "off-channel emissions " + std::to_string(result.off_channel_emissions) +
                  " <= " + std::to_string(want));
    }
    if (spec.contains("alternating")) {
      const auto pair = spec["alternating"];
      bool ok = result.event_channels.size() >= 2;
      for (size_t i = 0; ok && i < result.event_channels.size(); ++i) {
        const uint8_t a0 = pair[0].get<uint8_t>();
        const uint8_t b0 = pair[1].get<uint8_t>();
        const uint8_t want = i % 2 == 0 ? result.event_channels[0]
                                        : (result.event_channels[0] == a0 ? b0 : a0);
        if (result.event_channels[i] != want) ok = false;
      }
      a.check(ok, "event channels alternate between the two used channels");
    }
  }
  return report;
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                       std::optional<uint64_t> seed_override, bool check_asserts) {
  ScenarioConfig cfg = config;
  if (seed_override) {
    cfg.seed = *seed_override;
    if (cfg.mapping) cfg.mapping->channel.rng_seed = *seed_override;
    if (cfg.hop) cfg.hop->channel.rng_seed = *seed_override;
    if (cfg.optimization) cfg.optimization->seed = *seed_override;
    if (cfg.connection) cfg.connection->seed = *seed_override;
  }
  if (!check_asserts) cfg.assert_json.clear();

  std::filesystem::create_directories(out_dir);
  switch (cfg.kind) {
    case ScenarioKind::Mapping: return run_mapping_scenario(cfg, out_dir);
    case ScenarioKind::HopAlgorithm: return run_hop_scenario(cfg, out_dir);
    case ScenarioKind::Optimization: return run_optimization_scenario(cfg, out_dir);
    case ScenarioKind::Latency: return run_latency_scenario(cfg, out_dir);
    case ScenarioKind::Throughput: return run_throughput_scenario(cfg, out_dir);
    case ScenarioKind::Connection: return run_connection_scenario(cfg, out_dir);
  }
  throw ConfigError("unhandled scenario kind");
}

RunReport run_scenario_file(const std::filesystem::path& config_path,
                            const std::filesystem::path& out_dir,
                            std::optional<uint64_t> seed_override, bool check_asserts) {
  return run_scenario(load_scenario_config(config_path), out_dir, seed_override,
                      check_asserts);
}

}  // namespace channeldance::sim
