#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "channeldance/scenarios.hpp"

namespace channeldance::sim {

// Configuration or schema problem; the CLI turns these into diagnostics
// and a nonzero exit.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parsed, validated scenario file. Unknown fields are rejected.
struct ScenarioConfig;

// Loads and validates a scenario config. Throws ConfigError.
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

struct AssertOutcome {
  std::string description;
  bool passed;
};

struct RunReport {
  ScenarioKind kind;
  std::vector<std::filesystem::path> written;
  std::vector<AssertOutcome> asserts;
  bool asserts_evaluated = false;

  bool all_asserts_passed() const {
    for (const auto& a : asserts)
      if (!a.passed) return false;
    return true;
  }
};

// Runs the scenario and writes its declared outputs under out_dir.
// seed_override replaces the config's seed; check_asserts evaluates the
// config's assert block (if any).
RunReport run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                       std::optional<uint64_t> seed_override, bool check_asserts);

// Convenience: load + run.
RunReport run_scenario_file(const std::filesystem::path& config_path,
                            const std::filesystem::path& out_dir,
                            std::optional<uint64_t> seed_override, bool check_asserts);

struct ScenarioConfig {
  ScenarioKind kind;
  uint64_t seed = 0;
  std::map<std::string, std::string> outputs;  // artifact name -> relative path

  // Exactly one of these is populated, matching `kind`.
  std::optional<MappingConfig> mapping;
  std::optional<HopRunConfig> hop;
  std::optional<OptimizationConfig> optimization;
  std::optional<LatencyReportConfig> latency;
  std::optional<ThroughputConfig> throughput;
  std::optional<ConnectionConfig> connection;

  // Raw assert block, evaluated by run_scenario when requested.
  std::string assert_json;  // empty when absent
};

}  // namespace channeldance::sim
