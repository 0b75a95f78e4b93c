#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "channeldance/channel.hpp"

namespace channeldance::sim {

// Deterministic fixed-point formatting for report files.
std::string format_fixed(double value, int decimals);

// Quantile with linear interpolation between order statistics; values are
// sorted internally.
double quantile(std::vector<double> values, double q);

// Success fractions per (excitation, target) pair. Cells never exercised
// (including the zero-shift diagonal) stay undefined and print as NA.
class SuccessMatrix {
 public:
  void record_sent(ble::ChannelIndex excitation, ble::ChannelIndex target,
                   uint64_t n = 1);
  void record_decoded(ble::ChannelIndex excitation, ble::ChannelIndex target,
                      uint64_t n = 1);

  uint64_t sent(ble::ChannelIndex e, ble::ChannelIndex t) const;
  uint64_t decoded(ble::ChannelIndex e, ble::ChannelIndex t) const;
  std::optional<double> rate(ble::ChannelIndex e, ble::ChannelIndex t) const;

  // All defined rates, frequency-ordered row-major.
  std::vector<double> defined_rates() const;
  double global_median() const;

  // Frequency-ordered axes (rows = excitation, columns = target).
  void write_csv(std::ostream& os) const;

 private:
  std::array<std::array<uint64_t, ble::kChannelCount>, ble::kChannelCount> sent_{};
  std::array<std::array<uint64_t, ble::kChannelCount>, ble::kChannelCount> decoded_{};
};

struct QuartileSummary {
  uint8_t channel;
  int n;
  double min, q1, median, q3, max;
};

// Distribution of each target channel's column (the N-to-1 view).
std::vector<QuartileSummary> per_target_quartiles(const SuccessMatrix& m);
// Distribution of each excitation channel's row (the 1-to-N view).
std::vector<QuartileSummary> per_excitation_quartiles(const SuccessMatrix& m);

void write_quartiles_csv(std::ostream& os, const std::vector<QuartileSummary>& rows,
                         const char* axis_name);

}  // namespace channeldance::sim
