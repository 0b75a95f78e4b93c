#include "channeldance/optimize.hpp"

#include <algorithm>
#include <stdexcept>

namespace channeldance::edge {

void PerProfile::set(ble::ChannelIndex ch, double rate) {
  if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("PER must be in [0,1]");
  per[ch.value()] = rate;
}

double PerProfile::at(ble::ChannelIndex ch) const {
  auto it = per.find(ch.value());
  if (it == per.end()) throw std::out_of_range("channel not scanned");
  return it->second;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

ble::ChannelMap scan_and_optimize(const PerProfile& profile) {
  std::vector<std::pair<uint8_t, double>> scanned;  // data channels only
  for (const auto& [ch, rate] : profile.per) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("PER must be in [0,1]");
    if (ch < ble::kDataChannelCount) scanned.emplace_back(ch, rate);
  }
  if (scanned.size() < 2)
    throw std::invalid_argument("profile must cover at least two data channels");

  std::vector<double> rates;
  rates.reserve(scanned.size());
  for (const auto& [ch, rate] : scanned) rates.push_back(rate);
  const double cutoff = median(std::move(rates));

  uint64_t bits = 0;
  int kept = 0;
  for (const auto& [ch, rate] : scanned) {
    if (rate <= cutoff && rate < 1.0) {
      bits |= uint64_t{1} << ch;
      ++kept;
    }
  }

  if (kept < 2) {
    // Degenerate profile: fall back to the two lowest-PER channels.
    std::stable_sort(scanned.begin(), scanned.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    bits = uint64_t{1} << scanned[0].first | uint64_t{1} << scanned[1].first;
  }
  return ble::ChannelMap::from_bits(bits);
}

}  // namespace channeldance::edge
