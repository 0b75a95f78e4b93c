#include "channeldance/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace channeldance::sim {

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of nothing");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile fraction out of range");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

void SuccessMatrix::record_sent(ble::ChannelIndex e, ble::ChannelIndex t, uint64_t n) {
  sent_[e.value()][t.value()] += n;
}

void SuccessMatrix::record_decoded(ble::ChannelIndex e, ble::ChannelIndex t, uint64_t n) {
  decoded_[e.value()][t.value()] += n;
}

uint64_t SuccessMatrix::sent(ble::ChannelIndex e, ble::ChannelIndex t) const {
  return sent_[e.value()][t.value()];
}

uint64_t SuccessMatrix::decoded(ble::ChannelIndex e, ble::ChannelIndex t) const {
  return decoded_[e.value()][t.value()];
}

std::optional<double> SuccessMatrix::rate(ble::ChannelIndex e, ble::ChannelIndex t) const {
  const uint64_t s = sent(e, t);
  if (s == 0) return std::nullopt;
  return static_cast<double>(decoded(e, t)) / static_cast<double>(s);
}

std::vector<double> SuccessMatrix::defined_rates() const {
  std::vector<double> rates;
  for (ble::ChannelIndex e : ble::channels_by_frequency())
    for (ble::ChannelIndex t : ble::channels_by_frequency())
      if (auto r = rate(e, t)) rates.push_back(*r);
  return rates;
}

double SuccessMatrix::global_median() const { return quantile(defined_rates(), 0.5); }

void SuccessMatrix::write_csv(std::ostream& os) const {
  const auto& order = ble::channels_by_frequency();
  os << "excitation\\target";
  for (ble::ChannelIndex t : order) os << ",ch" << int{t.value()};
  os << '\n';
  for (ble::ChannelIndex e : order) {
    os << "ch" << int{e.value()};
    for (ble::ChannelIndex t : order) {
      const auto r = rate(e, t);
      os << ',' << (r ? format_fixed(*r, 3) : "NA");
    }
    os << '\n';
  }
}

namespace {

std::vector<QuartileSummary> summarize(const SuccessMatrix& m, bool by_target) {
  std::vector<QuartileSummary> rows;
  for (ble::ChannelIndex axis : ble::channels_by_frequency()) {
    std::vector<double> values;
    for (ble::ChannelIndex other : ble::channels_by_frequency()) {
      const auto r = by_target ? m.rate(other, axis) : m.rate(axis, other);
      if (r) values.push_back(*r);
    }
    if (values.empty()) continue;
    QuartileSummary s;
    s.channel = axis.value();
    s.n = static_cast<int>(values.size());
    s.min = quantile(values, 0.0);
    s.q1 = quantile(values, 0.25);
    s.median = quantile(values, 0.5);
    s.q3 = quantile(values, 0.75);
    s.max = quantile(values, 1.0);
    rows.push_back(s);
  }
  return rows;
}

}  // namespace

std::vector<QuartileSummary> per_target_quartiles(const SuccessMatrix& m) {
  return summarize(m, true);
}

std::vector<QuartileSummary> per_excitation_quartiles(const SuccessMatrix& m) {
  return summarize(m, false);
}

void write_quartiles_csv(std::ostream& os, const std::vector<QuartileSummary>& rows,
                         const char* axis_name) {
  os << axis_name << ",n,min,q1,median,q3,max\n";
  for (const auto& r : rows) {
    os << "ch" << int{r.channel} << ',' << r.n << ',' << format_fixed(r.min, 4) << ','
       << format_fixed(r.q1, 4) << ',' << format_fixed(r.median, 4) << ','
       << format_fixed(r.q3, 4) << ',' << format_fixed(r.max, 4) << '\n';
  }
}

}  // namespace channeldance::sim
