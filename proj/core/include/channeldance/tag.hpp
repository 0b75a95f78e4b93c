#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "channeldance/channel.hpp"
#include "channeldance/clock_table.hpp"
#include "channeldance/downlink.hpp"
#include "channeldance/hop.hpp"
#include "channeldance/packet.hpp"

namespace channeldance::tag {

// RF-switch control per symbol in units of pi (0 or 1). Symbol 0 adds no
// phase, symbol 1 adds pi; the control is the running sum mod 2*pi, so the
// same sequence drives both sidebands (-pi and pi coincide).
struct PhaseSequence {
  std::vector<uint8_t> controls;

  bool operator==(const PhaseSequence&) const = default;
};

PhaseSequence phase_sequence(std::span<const uint8_t> bits);

// Storage cost of precomputed clock states: 9 + 2n configuration words of
// 39 bits each per state, packed into 64-bit LUTs.
struct ResourceEstimate {
  long long n_states;
  int clocks_per_state;
  long long words_per_state;
  long long bits;
  long long lut_equivalents;
};

// clocks_per_state must be 1-6; n_states >= 0.
ResourceEstimate resource_estimate(long long n_states, int clocks_per_state);

// Model next to the measured LUT counts (which include baseline logic the
// formula does not cover).
void write_resource_report(std::ostream& os);

// How the tag predicts the excitation channel from its packet counter.
// Unknown means the excitor follows no announced rule; the tag then keeps
// counting but cannot predict a channel on its own.
class ExcitorSchedule {
 public:
  enum class Kind : uint8_t { Unknown, Fixed, Algorithmic, AdvCycle };

  static ExcitorSchedule unknown();
  static ExcitorSchedule fixed(ble::ChannelIndex ch);
  // `base` describes the hop state at packet counter 0.
  static ExcitorSchedule algorithmic(hop::HopState base);
  // The BLE 4 advertising rotation: packet k on channel 37 + k mod 3.
  static ExcitorSchedule adv_cycle();

  Kind kind() const { return kind_; }
  std::optional<ble::ChannelIndex> channel_at(uint16_t counter) const;

 private:
  Kind kind_ = Kind::Unknown;
  ble::ChannelIndex fixed_{37};
  std::optional<hop::HopState> base_;
};

// Where the tag points its backscattered packets.
class TargetSchedule {
 public:
  static TargetSchedule fixed(ble::ChannelIndex ch);
  static TargetSchedule hopping(hop::HopState state);

  bool is_hopping() const { return hop_.has_value(); }
  // Target for the tag's next emission without consuming it.
  ble::ChannelIndex peek() const;
  // Consume the next target, advancing a hopping schedule.
  ble::ChannelIndex advance();
  const std::optional<hop::HopState>& hop_state() const { return hop_; }
  void set_channel_map(const ble::ChannelMap& map);

 private:
  ble::ChannelIndex fixed_{37};
  std::optional<hop::HopState> hop_;
};

// One backscatter: double-sideband mixing puts the packet at the actual
// excitation frequency +/- the configured shift. The bits are whitened for
// the intended target, so only the image landing there can decode.
struct Emission {
  ble::ChannelIndex intended_target{0};
  int shift_mhz = 0;
  Sideband sideband = Sideband::Upper;
  int emitted_freq_mhz = 0;
  int mirror_freq_mhz = 0;
  std::optional<ble::ChannelIndex> emitted_channel;
  std::optional<ble::ChannelIndex> mirror_channel;
  bool on_target = false;  // emitted_channel == intended_target
  std::vector<uint8_t> onair;
};

// Phase controls for every on-air bit of an emission.
PhaseSequence emission_phase_controls(const Emission& emission);

struct TagConfig {
  ExcitorSchedule excitor;
  TargetSchedule targets = TargetSchedule::fixed(ble::ChannelIndex{0});
  uint32_t access_address = ble::kAdvAccessAddress;
  uint32_t crc_init = ble::kAdvCrcInit;
  std::array<uint8_t, 6> own_address{0xC0, 0xDA, 0x0C, 0xE0, 0x00, 0x01};
  std::array<uint8_t, 6> peer_address{0x00, 0x00, 0x00, 0x00, 0x00, 0x00};
};

// The backscatter tag. Downlink frames arrive asynchronously; excitation
// ticks drive the packet counter, which advances by exactly one per tick
// whether or not a frame made it (missed or corrupted frames fall back to
// self-prediction from the announced excitor schedule).
class Tag {
 public:
  explicit Tag(TagConfig config);

  bool started() const { return started_; }
  uint16_t packet_counter() const { return counter_; }
  std::optional<ble::ChannelIndex> believed_excitation() const { return excitation_; }
  const TargetSchedule& targets() const { return targets_; }
  uint32_t access_address() const { return config_.access_address; }
  uint32_t crc_init() const { return config_.crc_init; }

  // A decoded downlink frame; stale packet counters are ignored. ConnInfo
  // arms a CONNECT_IND on the next emission, after which the tag retargets
  // to the connection's hopping sequence.
  void on_downlink(const edge::DownlinkFrame& frame);

  // An excitation tick on `actual_channel`. Returns the emission, or
  // nothing when the tag has not started, cannot resolve an excitation
  // channel, or the selected target coincides with what it believes the
  // excitation channel is.
  std::optional<Emission> on_excitation(ble::ChannelIndex actual_channel,
                                        ble::PduType pdu_type,
                                        std::span<const uint8_t> payload);

  // Reconfigure the link the tag follows (connection setup).
  void follow_connection(const edge::ConnParams& params);

 private:
  void tick_counter();

  TagConfig config_;
  TargetSchedule targets_;
  bool started_ = false;
  bool counter_seeded_ = false;  // first tick after start consumes counter 0
  uint16_t counter_ = 0;
  std::optional<ble::ChannelIndex> excitation_;
  std::optional<edge::DownlinkFrame> pending_;
  std::optional<edge::ConnParams> pending_connection_;
};

}  // namespace channeldance::tag
