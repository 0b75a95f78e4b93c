#include "channeldance/world.hpp"

#include <cmath>
#include <cstdio>

#include "channeldance/downlink.hpp"
#include "channeldance/events.hpp"

namespace channeldance::sim {

ble::ChannelIndex ExcitorSetup::channel_for(uint16_t counter) const {
  if (!hop_base) return fixed_channel;
  return hop::channel_at(*hop_base, counter);
}

namespace {

std::string trace_line(uint64_t t_us, const char* what, const std::string& detail) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%10llu us  %-16s %s",
                static_cast<unsigned long long>(t_us), what, detail.c_str());
  return buf;
}

}  // namespace

WorldStats run_world(const WorldConfig& config) {
  WorldStats stats;
  EventQueue queue;
  ChannelModel model(config.channel);
  tag::Tag the_tag(config.tag);

  const auto trace = [&](const char* what, const std::string& detail) {
    if (config.record_trace) stats.trace.push_back(trace_line(queue.now(), what, detail));
  };

  const auto send_frame = [&](uint64_t send_time, const edge::DownlinkFrame& frame) {
    queue.at(send_time, EventKind::DownlinkSend, [&, frame] {
      ++stats.downlink_frames_sent;
      const auto encoded = edge::frame_encode(frame);
      const double delay =
          edge::forwarding_delay(config.edge.latency,
                                 static_cast<int>(frame.payload.size()))
              .total_us();
      trace("downlink-send", edge::frame_kind_name(frame.kind));
      if (!model.downlink_delivered()) {
        ++stats.downlink_frames_lost;
        trace("downlink-lost", edge::frame_kind_name(frame.kind));
        return;
      }
      const uint64_t arrival = queue.now() + static_cast<uint64_t>(std::llround(delay));
      queue.at(arrival, EventKind::DownlinkArrive, [&, encoded, frame] {
        // The ASK path is byte-exact; decode from the wire form.
        if (auto decoded = edge::frame_decode(encoded)) {
          the_tag.on_downlink(*decoded);
          trace("downlink-arrive", edge::frame_kind_name(frame.kind));
        }
      });
    });
  };

  // The start signal is the first scheduled action.
  send_frame(0, edge::DownlinkFrame::start());

  uint64_t previous_excitation = 0;
  for (uint64_t k = 0; k < config.excitor.count; ++k) {
    const uint16_t counter = static_cast<uint16_t>(k);
    const uint64_t t_k = config.excitor.start_time_us + k * config.excitor.interval_us;

    if (config.edge.refresh_every > 0 &&
        k % static_cast<uint64_t>(config.edge.refresh_every) == 0) {
      const edge::DownlinkFrame frame =
          config.edge.announce_counter
              ? edge::DownlinkFrame::packet_counter(counter)
              : edge::DownlinkFrame::channel_info(config.excitor.channel_for(counter));
      const double delay =
          edge::forwarding_delay(config.edge.latency,
                                 static_cast<int>(frame.payload.size()))
              .total_us();
      const uint64_t lead = static_cast<uint64_t>(std::llround(delay));
      // The excitor hands over packet k's info no earlier than packet k-1.
      uint64_t send_time = t_k > lead ? t_k - lead : 0;
      if (send_time < previous_excitation) send_time = previous_excitation;
      send_frame(send_time, frame);
    }
    previous_excitation = t_k;

    queue.at(t_k, EventKind::ExcitationStart, [&, counter] {
      ++stats.excitations;
      const ble::ChannelIndex actual = config.excitor.channel_for(counter);

      std::vector<uint8_t> payload(static_cast<size_t>(config.payload_bytes));
      for (size_t i = 0; i < payload.size(); ++i)
        payload[i] = static_cast<uint8_t>(counter + i);

      auto emission = the_tag.on_excitation(actual, config.uplink_pdu, payload);
      if (!emission) {
        ++stats.skipped_emissions;
        trace("excitation", "ch " + std::to_string(actual.value()) + " (no emission)");
        return;
      }

      ++stats.emissions;
      const ble::ChannelIndex target = emission->intended_target;
      stats.matrix.record_sent(actual, target);
      ++stats.intended_per_target[target.value()];
      if (!emission->on_target) ++stats.off_target_emissions;
      trace("backscatter",
            "exc ch " + std::to_string(actual.value()) + " -> ch " +
                std::to_string(target.value()) + " (" +
                std::to_string(emission->emitted_freq_mhz) + " MHz)");

      for (const auto& rx : config.receivers) {
        const int f_rx = ble::channel_to_frequency_mhz(rx.channel);
        const bool primary = f_rx == emission->emitted_freq_mhz;
        const bool mirror = f_rx == emission->mirror_freq_mhz;
        if (!primary && !mirror) continue;
        if (!model.backscatter_delivered(actual, rx.channel)) continue;

        ++(primary ? stats.deliveries : stats.mirror_deliveries);
        const auto decoded =
            ble::parse(emission->onair, rx.channel, rx.access_address, rx.crc_init);
        if (!decoded.ok()) {
          trace("decode-fail", "ch " + std::to_string(rx.channel.value()) + " " +
                                   ble::decode_status_name(decoded.status));
          continue;
        }
        if (primary) {
          ++stats.decodes;
          stats.matrix.record_decoded(actual, rx.channel);
          ++stats.decoded_per_target[rx.channel.value()];
        } else {
          ++stats.mirror_decodes;
        }
        trace("decode", "ch " + std::to_string(rx.channel.value()) + " " +
                            ble::pdu_type_name(decoded.packet.pdu_type));
      }
    });
  }

  queue.run_all();
  return stats;
}

}  // namespace channeldance::sim
