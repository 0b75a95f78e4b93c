#include "channeldance/tag.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "channeldance/whitening.hpp"

namespace channeldance::tag {

PhaseSequence phase_sequence(std::span<const uint8_t> bits) {
  PhaseSequence seq;
  seq.controls.reserve(bits.size());
  uint8_t accumulated = 0;  // running phase in units of pi, mod 2
  for (uint8_t bit : bits) {
    accumulated = static_cast<uint8_t>((accumulated + (bit & 1)) & 1);
    seq.controls.push_back(accumulated);
  }
  return seq;
}

ResourceEstimate resource_estimate(long long n_states, int clocks_per_state) {
  if (clocks_per_state < 1 || clocks_per_state >= 7)
    throw std::domain_error("clocks per state must be 1-6");
  if (n_states < 0) throw std::domain_error("negative state count");
  ResourceEstimate r;
  r.n_states = n_states;
  r.clocks_per_state = clocks_per_state;
  r.words_per_state = 9 + 2LL * clocks_per_state;
  r.bits = 39 * r.words_per_state * n_states;
  r.lut_equivalents = (r.bits + 63) / 64;
  return r;
}

void write_resource_report(std::ostream& os) {
  struct Measured {
    int states;
    int luts;
  };
  // Synthesis results for the 4-clock configuration on a ZYNQ-7010
  // (17600 LUTs total); includes baseline logic the storage model omits.
  static constexpr Measured measured[] = {{2, 78},   {4, 105},  {8, 155},
                                          {16, 219}, {32, 347}, {64, 569}};
  os << "clock-state storage: words/state = 9 + 2n, 39 bits/word, 64 bits/LUT\n";
  os << "states,clocks,words_per_state,bits,lut_equivalents,measured_luts\n";
  const auto one = resource_estimate(1, 4);
  os << "1,4," << one.words_per_state << ',' << one.bits << ',' << one.lut_equivalents
     << ",-\n";
  for (const auto& m : measured) {
    const auto r = resource_estimate(m.states, 4);
    os << m.states << ",4," << r.words_per_state << ',' << r.bits << ','
       << r.lut_equivalents << ',' << m.luts << '\n';
  }
  os << "# measured counts are full-design synthesis results; they include\n"
     << "# baseline logic outside the storage model and are not asserted.\n";
}

ExcitorSchedule ExcitorSchedule::unknown() { return ExcitorSchedule{}; }

ExcitorSchedule ExcitorSchedule::fixed(ble::ChannelIndex ch) {
  ExcitorSchedule s;
  s.kind_ = Kind::Fixed;
  s.fixed_ = ch;
  return s;
}

ExcitorSchedule ExcitorSchedule::algorithmic(hop::HopState base) {
  ExcitorSchedule s;
  s.kind_ = Kind::Algorithmic;
  s.base_ = base;
  return s;
}

ExcitorSchedule ExcitorSchedule::adv_cycle() {
  ExcitorSchedule s;
  s.kind_ = Kind::AdvCycle;
  return s;
}

std::optional<ble::ChannelIndex> ExcitorSchedule::channel_at(uint16_t counter) const {
  switch (kind_) {
    case Kind::Unknown: return std::nullopt;
    case Kind::Fixed: return fixed_;
    case Kind::Algorithmic: return hop::channel_at(*base_, counter);
    case Kind::AdvCycle: return ble::ChannelIndex{static_cast<uint8_t>(37 + counter % 3)};
  }
  return std::nullopt;
}

TargetSchedule TargetSchedule::fixed(ble::ChannelIndex ch) {
  TargetSchedule t;
  t.fixed_ = ch;
  return t;
}

TargetSchedule TargetSchedule::hopping(hop::HopState state) {
  TargetSchedule t;
  t.hop_ = state;
  return t;
}

ble::ChannelIndex TargetSchedule::peek() const {
  if (!hop_) return fixed_;
  return hop::hop_next(*hop_).channel;
}

ble::ChannelIndex TargetSchedule::advance() {
  if (!hop_) return fixed_;
  auto r = hop::hop_next(*hop_);
  hop_ = r.state;
  return r.channel;
}

void TargetSchedule::set_channel_map(const ble::ChannelMap& map) {
  if (hop_) hop_->channel_map = map;
}

PhaseSequence emission_phase_controls(const Emission& emission) {
  return phase_sequence(ble::bytes_to_bits(emission.onair));
}

Tag::Tag(TagConfig config) : config_(std::move(config)), targets_(config_.targets) {}

void Tag::on_downlink(const edge::DownlinkFrame& frame) {
  switch (frame.kind) {
    case edge::FrameKind::Start:
      started_ = true;
      counter_seeded_ = false;
      pending_.reset();
      return;
    case edge::FrameKind::ChannelMapUpdate:
      if (auto map = frame.as_channel_map_update()) targets_.set_channel_map(*map);
      return;
    case edge::FrameKind::ConnInfo:
      // Connect on the next excitation: the CONNECT_IND still goes out on
      // the current (advertising) target, then the tag retargets.
      if (auto params = frame.as_conn_info()) pending_connection_ = *params;
      return;
    case edge::FrameKind::ChannelInfo:
    case edge::FrameKind::PacketCounter:
      // Describes the next excitation; consumed at the tick.
      pending_ = frame;
      return;
  }
}

void Tag::follow_connection(const edge::ConnParams& params) {
  config_.access_address = params.access_address;
  config_.crc_init = params.crc_init;
  targets_ = TargetSchedule::hopping(hop::make_csa1(params.hop_increment, params.channel_map));
}

void Tag::tick_counter() {
  if (!counter_seeded_) {
    counter_ = 0;
    counter_seeded_ = true;
  } else {
    counter_ = static_cast<uint16_t>(counter_ + 1);
  }
}

std::optional<Emission> Tag::on_excitation(ble::ChannelIndex actual_channel,
                                           ble::PduType pdu_type,
                                           std::span<const uint8_t> payload) {
  if (!started_) return std::nullopt;

  bool counter_from_frame = false;
  std::optional<ble::ChannelIndex> announced;
  if (pending_) {
    if (auto counter = pending_->as_packet_counter()) {
      const uint16_t ahead = static_cast<uint16_t>(*counter - counter_);
      const bool newer = !counter_seeded_ || (ahead >= 1 && ahead <= 0x7FFF);
      if (newer) {
        counter_ = *counter;
        counter_seeded_ = true;
        counter_from_frame = true;
      }
    } else if (auto ch = pending_->as_channel_info()) {
      announced = *ch;
    }
    pending_.reset();
  }
  if (!counter_from_frame) tick_counter();

  // An explicitly announced channel wins, then the announced schedule. An
  // unannounced excitor with no fresh frame leaves this tick's excitation
  // explicitly unknown; the tag cannot guess it.
  if (announced)
    excitation_ = announced;
  else if (auto predicted = config_.excitor.channel_at(counter_))
    excitation_ = predicted;
  else
    excitation_.reset();

  // A pending connection replaces this emission with the CONNECT_IND; the
  // advertising target is consumed, not advanced past.
  std::vector<uint8_t> connect_payload;
  if (pending_connection_ && excitation_) {
    ble::ConnectIndFields fields;
    fields.init_addr = config_.own_address;
    fields.adv_addr = config_.peer_address;
    fields.access_address = pending_connection_->access_address;
    fields.crc_init = pending_connection_->crc_init;
    fields.interval_1250us =
        static_cast<uint16_t>(pending_connection_->interval_us / 1250);
    fields.channel_map = pending_connection_->channel_map;
    fields.hop_increment = pending_connection_->hop_increment;
    connect_payload = ble::encode_connect_ind(fields);
    pdu_type = ble::PduType::ConnectInd;
    payload = connect_payload;
  }

  const ble::ChannelIndex target = targets_.peek();
  if (!pending_connection_) targets_.advance();
  if (!excitation_) return std::nullopt;
  const ble::ChannelIndex believed = *excitation_;
  if (believed == target) return std::nullopt;

  // The CONNECT_IND itself still uses the pre-connection link settings.
  const uint32_t emission_aa = config_.access_address;
  const uint32_t emission_crc_init = config_.crc_init;
  if (pending_connection_) {
    follow_connection(*pending_connection_);
    pending_connection_.reset();
  }

  const ShiftPlan plan = shift_for(believed, target);
  const ClockState& clock = ClockStateTable::instance().for_shift(plan.shift_mhz);

  Emission e;
  e.intended_target = target;
  e.shift_mhz = clock.shift_mhz;
  e.sideband = plan.sideband;

  const int f_actual = ble::channel_to_frequency_mhz(actual_channel);
  const int sign = plan.sideband == Sideband::Upper ? 1 : -1;
  e.emitted_freq_mhz = f_actual + sign * clock.shift_mhz;
  e.mirror_freq_mhz = f_actual - sign * clock.shift_mhz;
  e.emitted_channel = ble::channel_at_frequency(e.emitted_freq_mhz);
  e.mirror_channel = ble::channel_at_frequency(e.mirror_freq_mhz);
  e.on_target = e.emitted_channel && *e.emitted_channel == target;

  ble::LinkLayerPacket pkt;
  pkt.access_address = emission_aa;
  pkt.pdu_type = pdu_type;
  pkt.payload.assign(payload.begin(), payload.end());
  pkt.whitening_channel = target;
  e.onair = ble::assemble(pkt, emission_crc_init);
  return e;
}

}  // namespace channeldance::tag
