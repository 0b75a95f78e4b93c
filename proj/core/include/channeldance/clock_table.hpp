#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>

#include "channeldance/channel.hpp"

namespace channeldance::tag {

inline constexpr int kRefClockMhz = 100;
// One state per even shift 2..78 MHz; the two sidebands share a state, so
// 39 states cover every ordered channel pair.
inline constexpr int kClockStateCount = 39;

// One precomputed synthesizer configuration. The output clock is
// ref * mul / div / clk0_divide, exact in integer arithmetic.
struct ClockState {
  int shift_mhz;
  int mul;
  int div;
  int clk0_divide;
  int ref_clock_mhz;

  bool operator==(const ClockState&) const = default;
};

class ClockStateTable {
 public:
  static const ClockStateTable& instance();

  // Throws std::domain_error unless shift is even and within 2..78 MHz.
  const ClockState& for_shift(int shift_mhz) const;

  // State for |f_target - f_excitation|; throws when the channels coincide.
  const ClockState& lookup(ble::ChannelIndex excitation, ble::ChannelIndex target) const;

  const std::array<ClockState, kClockStateCount>& states() const { return states_; }

  // CSV dump: shift_mhz,mul,div,clk0_divide per line.
  void write_csv(std::ostream& os) const;

 private:
  ClockStateTable();
  std::array<ClockState, kClockStateCount> states_;
};

enum class Sideband : uint8_t { Upper, Lower };

struct ShiftPlan {
  int shift_mhz;
  Sideband sideband;                        // upper when f_target > f_excitation
  std::optional<ble::ChannelIndex> mirror;  // image on the opposite side, if on-grid

  bool operator==(const ShiftPlan&) const = default;
};

// Shift magnitude, sideband and mirror channel for an excitation/target
// pair. Throws std::invalid_argument when excitation == target: a zero
// shift cannot be backscattered.
ShiftPlan shift_for(ble::ChannelIndex excitation, ble::ChannelIndex target);

}  // namespace channeldance::tag
