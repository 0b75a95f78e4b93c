#include "channeldance/clock_table.hpp"

#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace channeldance::tag {

namespace {

// Synthesizer factor ranges (multiplier, input divider, output divider).
constexpr int kMaxMul = 64;
constexpr int kMaxDiv = 106;
constexpr int kMaxClk0Divide = 128;

// Smallest (mul, div, clk0_divide), in that order, with an exact rational
// product ref * mul / div / clk0_divide == target.
ClockState solve_factors(int target_mhz) {
  for (int mul = 1; mul <= kMaxMul; ++mul) {
    const long long numerator = static_cast<long long>(kRefClockMhz) * mul;
    if (numerator % target_mhz != 0) continue;
    const long long product = numerator / target_mhz;  // div * clk0_divide
    for (int div = 1; div <= kMaxDiv; ++div) {
      if (product % div != 0) continue;
      const long long clk0 = product / div;
      if (clk0 >= 1 && clk0 <= kMaxClk0Divide)
        return ClockState{target_mhz, mul, div, static_cast<int>(clk0), kRefClockMhz};
    }
  }
  throw std::domain_error("no exact factorization for shift");
}

}  // namespace

ClockStateTable::ClockStateTable() {
  for (int k = 1; k <= kClockStateCount; ++k)
    states_[static_cast<size_t>(k - 1)] = solve_factors(2 * k);
}

const ClockStateTable& ClockStateTable::instance() {
  static const ClockStateTable table;
  return table;
}

const ClockState& ClockStateTable::for_shift(int shift_mhz) const {
  if (shift_mhz < 2 || shift_mhz > 2 * kClockStateCount || shift_mhz % 2 != 0)
    throw std::domain_error("shift must be an even 2..78 MHz");
  return states_[static_cast<size_t>(shift_mhz / 2 - 1)];
}

const ClockState& ClockStateTable::lookup(ble::ChannelIndex excitation,
                                          ble::ChannelIndex target) const {
  const int delta = ble::channel_to_frequency_mhz(target) -
                    ble::channel_to_frequency_mhz(excitation);
  if (delta == 0) throw std::invalid_argument("excitation and target coincide");
  return for_shift(std::abs(delta));
}

void ClockStateTable::write_csv(std::ostream& os) const {
  os << "shift_mhz,mul,div,clk0_divide\n";
  for (const auto& s : states_)
    os << s.shift_mhz << ',' << s.mul << ',' << s.div << ',' << s.clk0_divide << '\n';
}

ShiftPlan shift_for(ble::ChannelIndex excitation, ble::ChannelIndex target) {
  const int f_e = ble::channel_to_frequency_mhz(excitation);
  const int f_t = ble::channel_to_frequency_mhz(target);
  if (f_e == f_t)
    throw std::invalid_argument("zero shift is not backscatterable");

  ShiftPlan plan;
  plan.shift_mhz = std::abs(f_t - f_e);
  plan.sideband = f_t > f_e ? Sideband::Upper : Sideband::Lower;
  const int mirror_freq = plan.sideband == Sideband::Upper ? f_e - plan.shift_mhz
                                                           : f_e + plan.shift_mhz;
  plan.mirror = ble::channel_at_frequency(mirror_freq);
  return plan;
}

}  // namespace channeldance::tag
