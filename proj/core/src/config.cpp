#include "channeldance/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace channeldance::sim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& ctx) {
  if (!obj.is_object()) fail(ctx + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key)) fail(ctx + ": unknown field '" + key + "'");
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& obj, const char* key, std::optional<double> fallback,
                  const std::string& ctx) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    fail(ctx + ": missing field '" + key + "'");
  }
  if (!v->is_number()) fail(ctx + ": field '" + key + "' must be a number");
  return v->get<double>();
}

int64_t get_integer(const json& obj, const char* key, std::optional<int64_t> fallback,
                    const std::string& ctx) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    fail(ctx + ": missing field '" + key + "'");
  }
  if (!v->is_number_integer()) fail(ctx + ": field '" + key + "' must be an integer");
  return v->get<int64_t>();
}

bool get_bool(const json& obj, const char* key, bool fallback, const std::string& ctx) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(ctx + ": field '" + key + "' must be a boolean");
  return v->get<bool>();
}

std::string get_string(const json& obj, const char* key, const std::string& ctx) {
  const json* v = find(obj, key);
  if (!v) fail(ctx + ": missing field '" + key + "'");
  if (!v->is_string()) fail(ctx + ": field '" + key + "' must be a string");
  return v->get<std::string>();
}

// Accepts a JSON number or a "0x..." string.
uint32_t get_word(const json& obj, const char* key, const std::string& ctx) {
  const json* v = find(obj, key);
  if (!v) fail(ctx + ": missing field '" + key + "'");
  if (v->is_number_unsigned()) return v->get<uint32_t>();
  if (v->is_string()) {
    const std::string s = v->get<std::string>();
    try {
      return static_cast<uint32_t>(std::stoul(s, nullptr, 0));
    } catch (const std::exception&) {
      fail(ctx + ": field '" + key + "' is not a valid word");
    }
  }
  fail(ctx + ": field '" + key + "' must be a number or hex string");
}

uint8_t get_channel(const json& v, const std::string& ctx) {
  if (!v.is_number_integer()) fail(ctx + ": channel must be an integer");
  const int64_t ch = v.get<int64_t>();
  if (ch < 0 || ch > 39) fail(ctx + ": channel out of range (0-39)");
  return static_cast<uint8_t>(ch);
}

std::vector<uint8_t> get_channel_list(const json& obj, const char* key,
                                      const std::string& ctx) {
  const json* v = find(obj, key);
  if (!v) return {};
  if (!v->is_array()) fail(ctx + ": field '" + key + "' must be an array");
  std::vector<uint8_t> out;
  for (const auto& e : *v) out.push_back(get_channel(e, ctx));
  return out;
}

ChannelModelConfig parse_channel_model(const json* obj, uint64_t seed,
                                       const std::string& ctx) {
  ChannelModelConfig cfg;
  cfg.rng_seed = seed;
  if (!obj) return cfg;
  require_keys(*obj,
               {"base_per", "neighbor_2mhz_fail", "degraded_shift_band_mhz",
                "degraded_loss", "downlink_loss"},
               ctx);

  if (const json* base = find(*obj, "base_per")) {
    if (base->is_number()) {
      cfg.base_per.fill(base->get<double>());
    } else if (base->is_object()) {
      require_keys(*base, {"default", "per_channel"}, ctx + ".base_per");
      cfg.base_per.fill(get_number(*base, "default", 0.0, ctx + ".base_per"));
      if (const json* per = find(*base, "per_channel")) {
        if (!per->is_object()) fail(ctx + ": per_channel must be an object");
        for (const auto& [key, value] : per->items()) {
          int ch = -1;
          try {
            ch = std::stoi(key);
          } catch (const std::exception&) {
          }
          if (ch < 0 || ch > 39) fail(ctx + ": per_channel key '" + key + "'");
          if (!value.is_number()) fail(ctx + ": per_channel values must be numbers");
          cfg.base_per[static_cast<size_t>(ch)] = value.get<double>();
        }
      }
    } else {
      fail(ctx + ": base_per must be a number or object");
    }
  }

  cfg.neighbor_2mhz_fail = get_bool(*obj, "neighbor_2mhz_fail", false, ctx);
  if (const json* band = find(*obj, "degraded_shift_band_mhz")) {
    if (!band->is_array() || band->size() != 2 || !(*band)[0].is_number_integer() ||
        !(*band)[1].is_number_integer())
      fail(ctx + ": degraded_shift_band_mhz must be [low, high]");
    cfg.degraded_shift_low_mhz = (*band)[0].get<int>();
    cfg.degraded_shift_high_mhz = (*band)[1].get<int>();
  }
  cfg.degraded_loss = get_number(*obj, "degraded_loss", 0.0, ctx);
  cfg.downlink_loss = get_number(*obj, "downlink_loss", 0.0, ctx);
  return cfg;
}

edge::LatencyModel parse_latency_profile(const json* v, const std::string& ctx) {
  if (!v) return edge::LatencyModel::mcu();
  if (v->is_string()) {
    const std::string name = v->get<std::string>();
    if (name == "mcu") return edge::LatencyModel::mcu();
    if (name == "laptop") return edge::LatencyModel::laptop();
    fail(ctx + ": unknown latency profile '" + name + "'");
  }
  if (!v->is_object()) fail(ctx + ": latency profile must be a name or object");
  require_keys(*v,
               {"ble_rx_chain_us", "controller_forward_us", "ask_tx_chain_us",
                "tag_decode_us", "clock_reconfig_us", "uart_baud", "spi_hz"},
               ctx);
  edge::LatencyModel m = edge::LatencyModel::mcu();
  m.ble_rx_chain_us = get_number(*v, "ble_rx_chain_us", m.ble_rx_chain_us, ctx);
  m.controller_forward_us =
      get_number(*v, "controller_forward_us", m.controller_forward_us, ctx);
  m.ask_tx_chain_us = get_number(*v, "ask_tx_chain_us", m.ask_tx_chain_us, ctx);
  m.tag_decode_us = get_number(*v, "tag_decode_us", m.tag_decode_us, ctx);
  m.clock_reconfig_us = get_number(*v, "clock_reconfig_us", m.clock_reconfig_us, ctx);
  m.uart_baud = get_number(*v, "uart_baud", m.uart_baud, ctx);
  m.spi_hz = get_number(*v, "spi_hz", m.spi_hz, ctx);
  return m;
}

edge::PerProfile parse_per_profile(const json& obj, const char* key,
                                   const std::string& ctx) {
  const json* v = find(obj, key);
  if (!v) fail(ctx + ": missing field '" + key + "'");
  if (!v->is_object()) fail(ctx + ": '" + key + "' must be an object");
  require_keys(*v, {"default", "channels", "per_channel"}, ctx);

  edge::PerProfile profile;
  std::vector<uint8_t> channels = get_channel_list(*v, "channels", ctx);
  if (channels.empty())
    for (uint8_t ch = 0; ch < ble::kDataChannelCount; ++ch) channels.push_back(ch);
  const double preset = get_number(*v, "default", 0.0, ctx);
  for (uint8_t ch : channels) profile.set(ble::ChannelIndex{ch}, preset);
  if (const json* per = find(*v, "per_channel")) {
    if (!per->is_object()) fail(ctx + ": per_channel must be an object");
    for (const auto& [k, value] : per->items()) {
      int ch = -1;
      try {
        ch = std::stoi(k);
      } catch (const std::exception&) {
      }
      if (ch < 0 || ch > 39) fail(ctx + ": per_channel key '" + k + "'");
      if (!value.is_number()) fail(ctx + ": per_channel values must be numbers");
      profile.set(ble::ChannelIndex{static_cast<uint8_t>(ch)}, value.get<double>());
    }
  }
  return profile;
}

std::map<std::string, std::string> parse_outputs(const json& obj,
                                                 const std::set<std::string>& allowed,
                                                 const std::string& ctx) {
  std::map<std::string, std::string> outputs;
  const json* v = find(obj, "outputs");
  if (!v) return outputs;
  require_keys(*v, allowed, ctx + ".outputs");
  for (const auto& [key, value] : v->items()) {
    if (!value.is_string()) fail(ctx + ": output paths must be strings");
    outputs[key] = value.get<std::string>();
  }
  return outputs;
}

uint64_t get_seed(const json& obj, const std::string& ctx) {
  const json* v = find(obj, "seed");
  if (!v) fail(ctx + ": missing field 'seed'");
  if (v->is_number_unsigned()) return v->get<uint64_t>();
  if (v->is_number_integer() && v->get<int64_t>() >= 0)
    return static_cast<uint64_t>(v->get<int64_t>());
  fail(ctx + ": seed must be a nonnegative integer");
}

void validate_assert_keys(const json& obj, ScenarioKind kind) {
  static const std::map<ScenarioKind, std::set<std::string>> allowed = {
      {ScenarioKind::Mapping,
       {"expect_all_ones", "min_global_median", "neighbor_cells_zero",
        "max_degraded_band_mean", "max_runtime_seconds"}},
      {ScenarioKind::HopAlgorithm,
       {"expect_exact", "min_channel_rate", "min_aggregate_rate",
        "expected_count_bands"}},
      {ScenarioKind::Optimization,
       {"min_gain", "expect_gain", "exclusion_matches_median_split"}},
      {ScenarioKind::Latency,
       {"total_us", "total_tol_frac", "plm_ms", "plm_reference_ms", "plm_tol_plus",
        "plm_tol_minus", "min_ratio"}},
      {ScenarioKind::Throughput,
       {"expect_kbps", "kbps_tol", "expect_ratio_vs_full", "ratio_tol"}},
      {ScenarioKind::Connection,
       {"oracle_match", "max_off_channel", "alternating"}},
  };
  require_keys(obj, allowed.at(kind), "assert");
}

hop::HopState parse_hop_state(const json& obj, const std::string& ctx) {
  const std::string algorithm = get_string(obj, "algorithm", ctx);
  const auto used = get_channel_list(obj, "used_channels", ctx);
  ble::ChannelMap map = used.empty() ? ble::ChannelMap::all_data_channels()
                                     : ble::ChannelMap::from_channels(used);
  if (algorithm == "csa1") {
    const auto hop_increment =
        static_cast<uint8_t>(get_integer(obj, "hop_increment", std::nullopt, ctx));
    const auto last = static_cast<uint8_t>(
        get_integer(obj, "last_unmapped_channel", int64_t{0}, ctx));
    return hop::make_csa1(hop_increment, map, last);
  }
  if (algorithm == "csa2") {
    return hop::make_csa2(get_word(obj, "access_address", ctx), map);
  }
  fail(ctx + ": algorithm must be 'csa1' or 'csa2'");
}

}  // namespace

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("config is not valid JSON: " + std::string(e.what()));
  }
  if (!root.is_object()) fail("config root must be an object");

  const std::string name = get_string(root, "scenario", "config");
  const ScenarioInfo* info = find_scenario(name);
  if (!info) fail("unknown scenario '" + name + "'");

  ScenarioConfig cfg;
  cfg.kind = info->kind;
  cfg.seed = get_seed(root, "config");

  if (const json* a = find(root, "assert")) {
    validate_assert_keys(*a, cfg.kind);
    cfg.assert_json = a->dump();
  }

  const std::string ctx = name;
  switch (cfg.kind) {
    case ScenarioKind::Mapping: {
      require_keys(root,
                   {"scenario", "seed", "outputs", "assert", "mode", "packets_per_pair",
                    "payload_bytes", "excitation_interval_us", "excitations", "targets",
                    "channel_model", "latency_profile"},
                   ctx);
      MappingConfig m;
      const std::string mode = get_string(root, "mode", ctx);
      if (mode == "n_to_1")
        m.mode = MappingConfig::Mode::NToOne;
      else if (mode == "1_to_n")
        m.mode = MappingConfig::Mode::OneToN;
      else if (mode == "n_to_n")
        m.mode = MappingConfig::Mode::NToN;
      else
        fail(ctx + ": mode must be n_to_1, 1_to_n or n_to_n");
      m.packets_per_pair =
          static_cast<uint32_t>(get_integer(root, "packets_per_pair", std::nullopt, ctx));
      if (m.packets_per_pair < 1) fail(ctx + ": packets_per_pair must be >= 1");
      m.payload_bytes =
          static_cast<int>(get_integer(root, "payload_bytes", int64_t{20}, ctx));
      m.excitation_interval_us = static_cast<uint64_t>(
          get_integer(root, "excitation_interval_us", int64_t{10'000}, ctx));
      m.excitations = get_channel_list(root, "excitations", ctx);
      m.targets = get_channel_list(root, "targets", ctx);
      m.channel = parse_channel_model(find(root, "channel_model"), cfg.seed, ctx);
      m.latency = parse_latency_profile(find(root, "latency_profile"), ctx);
      cfg.outputs = parse_outputs(
          root,
          {"matrix_csv", "target_quartiles_csv", "excitation_quartiles_csv",
           "summary_json"},
          ctx);
      cfg.mapping = std::move(m);
      break;
    }
    case ScenarioKind::HopAlgorithm: {
      require_keys(root,
                   {"scenario", "seed", "outputs", "assert", "algorithm", "used_channels",
                    "hop_increment", "last_unmapped_channel", "access_address", "n_hops",
                    "excitation_channel", "excitation_interval_us",
                    "counter_refresh_every", "payload_bytes", "channel_model",
                    "latency_profile"},
                   ctx);
      HopRunConfig h;
      h.hop = parse_hop_state(root, ctx);
      h.n_hops = static_cast<uint64_t>(get_integer(root, "n_hops", int64_t{1000}, ctx));
      h.excitation_channel =
          ble::ChannelIndex{static_cast<uint8_t>(
              get_integer(root, "excitation_channel", int64_t{37}, ctx))};
      h.excitation_interval_us = static_cast<uint64_t>(
          get_integer(root, "excitation_interval_us", int64_t{10'000}, ctx));
      h.refresh_every = static_cast<int>(
          get_integer(root, "counter_refresh_every", int64_t{1}, ctx));
      h.payload_bytes =
          static_cast<int>(get_integer(root, "payload_bytes", int64_t{20}, ctx));
      h.channel = parse_channel_model(find(root, "channel_model"), cfg.seed, ctx);
      h.latency = parse_latency_profile(find(root, "latency_profile"), ctx);
      cfg.outputs = parse_outputs(root, {"histogram_csv", "summary_json"}, ctx);
      cfg.hop = std::move(h);
      break;
    }
    case ScenarioKind::Optimization: {
      require_keys(root,
                   {"scenario", "seed", "outputs", "assert", "per_profile",
                    "packet_interval_ms", "payload_bytes", "packets_per_channel",
                    "bottom_quantile"},
                   ctx);
      OptimizationConfig o;
      o.profile = parse_per_profile(root, "per_profile", ctx);
      o.packet_interval_ms = get_number(root, "packet_interval_ms", 50.0, ctx);
      o.payload_bytes =
          static_cast<int>(get_integer(root, "payload_bytes", int64_t{10}, ctx));
      o.packets_per_channel = static_cast<uint32_t>(
          get_integer(root, "packets_per_channel", int64_t{200}, ctx));
      o.bottom_quantile = get_number(root, "bottom_quantile", 0.20, ctx);
      o.seed = cfg.seed;
      cfg.outputs = parse_outputs(root, {"goodput_csv", "summary_json"}, ctx);
      cfg.optimization = std::move(o);
      break;
    }
    case ScenarioKind::Latency: {
      require_keys(root,
                   {"scenario", "seed", "outputs", "assert", "latency_profile",
                    "payload_bytes", "plm"},
                   ctx);
      LatencyReportConfig l;
      l.model = parse_latency_profile(find(root, "latency_profile"), ctx);
      l.payload_bytes =
          static_cast<int>(get_integer(root, "payload_bytes", int64_t{20}, ctx));
      if (const json* plm = find(root, "plm")) {
        require_keys(*plm, {"packet_interval_ms", "symbol_bits"}, ctx + ".plm");
        l.plm_packet_interval_ms =
            get_number(*plm, "packet_interval_ms", 14.0, ctx + ".plm");
        l.plm_symbol_bits = static_cast<int>(
            get_integer(*plm, "symbol_bits", int64_t{1}, ctx + ".plm"));
      }
      cfg.outputs = parse_outputs(root, {"breakdown_json"}, ctx);
      cfg.latency = std::move(l);
      break;
    }
    case ScenarioKind::Throughput: {
      require_keys(root,
                   {"scenario", "seed", "outputs", "assert", "channels_used",
                    "excitation_interval_us", "payload_bytes", "reference"},
                   ctx);
      ThroughputConfig t;
      t.channels_used =
          static_cast<int>(get_integer(root, "channels_used", int64_t{37}, ctx));
      t.excitation_interval_us = static_cast<uint64_t>(
          get_integer(root, "excitation_interval_us", int64_t{66'471}, ctx));
      t.payload_bytes =
          static_cast<int>(get_integer(root, "payload_bytes", int64_t{255}, ctx));
      if (const json* ref = find(root, "reference")) {
        require_keys(*ref, {"vs_18ch", "vs_4ch"}, ctx + ".reference");
        t.reference_vs_18ch = get_number(*ref, "vs_18ch", 3.9, ctx);
        t.reference_vs_4ch = get_number(*ref, "vs_4ch", 8.3, ctx);
      }
      cfg.outputs = parse_outputs(root, {"report_json", "sweep_csv"}, ctx);
      cfg.throughput = std::move(t);
      break;
    }
    case ScenarioKind::Connection: {
      require_keys(root,
                   {"scenario", "seed", "outputs", "assert", "adv_channel", "connection",
                    "n_events", "downlink_loss", "latency_profile"},
                   ctx);
      ConnectionConfig c;
      c.adv_channel = ble::ChannelIndex{static_cast<uint8_t>(
          get_integer(root, "adv_channel", int64_t{38}, ctx))};
      const json* conn = find(root, "connection");
      if (!conn) fail(ctx + ": missing field 'connection'");
      require_keys(*conn,
                   {"access_address", "crc_init", "hop_increment", "used_channels",
                    "interval_us"},
                   ctx + ".connection");
      c.conn.access_address = get_word(*conn, "access_address", ctx);
      c.conn.crc_init = get_word(*conn, "crc_init", ctx) & 0xFFFFFF;
      c.conn.hop_increment = static_cast<uint8_t>(
          get_integer(*conn, "hop_increment", std::nullopt, ctx));
      const auto used = get_channel_list(*conn, "used_channels", ctx);
      c.conn.channel_map = used.empty() ? ble::ChannelMap::all_data_channels()
                                        : ble::ChannelMap::from_channels(used);
      c.conn.interval_us = static_cast<uint32_t>(
          get_integer(*conn, "interval_us", int64_t{50'000}, ctx));
      c.n_events =
          static_cast<uint32_t>(get_integer(root, "n_events", int64_t{20}, ctx));
      c.downlink_loss = get_number(root, "downlink_loss", 0.0, ctx);
      c.seed = cfg.seed;
      c.latency = parse_latency_profile(find(root, "latency_profile"), ctx);
      cfg.outputs = parse_outputs(root, {"trace_log", "summary_json"}, ctx);
      cfg.connection = std::move(c);
      break;
    }
  }
  return cfg;
}

}  // namespace channeldance::sim
