#include <cmath>
#include <cstdio>

#include "channeldance/events.hpp"
#include "channeldance/scenarios.hpp"

namespace channeldance::sim {

namespace {

std::string sniffer_line(uint64_t t_us, const std::string& where, const char* pdu,
                         const std::string& detail) {
  char buf[192];
  std::snprintf(buf, sizeof buf, "%10llu us  %-6s %-14s %s",
                static_cast<unsigned long long>(t_us), where.c_str(), pdu,
                detail.c_str());
  return buf;
}

std::string hex32(uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%08X", v);
  return buf;
}

// The commodity peer: advertises, accepts the CONNECT_IND, then follows
// the connection's CSA#1 sequence and decodes what lands on it.
struct CommodityDevice {
  bool connected = false;
  hop::HopState hop = hop::make_csa1(5, ble::ChannelMap::all_data_channels());
  uint32_t access_address = ble::kAdvAccessAddress;
  uint32_t crc_init = ble::kAdvCrcInit;
  ble::ChannelIndex listen{38};

  void enter_connection(const ble::ConnectIndFields& fields) {
    connected = true;
    access_address = fields.access_address;
    crc_init = fields.crc_init;
    hop = hop::make_csa1(fields.hop_increment, fields.channel_map);
  }

  // Advance to the next connection event's channel.
  void next_event() {
    auto r = hop::csa1_next(hop);
    hop = r.state;
    listen = r.channel;
  }
};

}  // namespace

ConnectionResult run_connection(const ConnectionConfig& config) {
  if (!config.adv_channel.is_advertising())
    throw std::invalid_argument("adv_channel must be an advertising channel");
  if (config.conn.hop_increment < 5 || config.conn.hop_increment > 16)
    throw std::invalid_argument("hop increment must be 5-16");
  if (config.conn.interval_us < 7'500)
    throw std::invalid_argument("connection interval below 7.5 ms");

  ConnectionResult result;
  EventQueue queue;

  ChannelModelConfig loss_cfg;
  loss_cfg.downlink_loss = config.downlink_loss;
  loss_cfg.rng_seed = config.seed;
  ChannelModel model(loss_cfg);

  tag::TagConfig tag_cfg;
  tag_cfg.excitor = tag::ExcitorSchedule::adv_cycle();
  tag_cfg.targets = tag::TargetSchedule::fixed(config.adv_channel);
  tag::Tag the_tag(tag_cfg);

  CommodityDevice peer;
  peer.listen = config.adv_channel;

  const auto trace = [&](const std::string& where, const char* pdu,
                         const std::string& detail) {
    result.trace.push_back(sniffer_line(queue.now(), where, pdu, detail));
  };

  const uint64_t interval = config.conn.interval_us;
  const double counter_delay =
      edge::forwarding_delay(config.latency, 2).total_us();  // PacketCounter frames
  const uint64_t counter_lead = static_cast<uint64_t>(std::llround(counter_delay));

  // Control plane, delivered reliably: start signal, then the sniffed
  // advertisement is forwarded as connection info.
  const uint64_t t_start_arrival = static_cast<uint64_t>(
      std::llround(edge::forwarding_delay(config.latency, 0).total_us()));
  queue.at(t_start_arrival, EventKind::DownlinkArrive,
           [&] { the_tag.on_downlink(edge::DownlinkFrame::start()); });

  const uint64_t t_adv = 10'000;
  queue.at(t_adv, EventKind::AdvertiserTx, [&] {
    trace("ch " + std::to_string(config.adv_channel.value()), "ADV_IND",
          "commodity advertiser, sniffed by edge");
  });
  const uint64_t t_conninfo_arrival =
      t_adv +
      static_cast<uint64_t>(std::llround(edge::forwarding_delay(config.latency, 17).total_us()));
  queue.at(t_conninfo_arrival, EventKind::DownlinkArrive, [&] {
    the_tag.on_downlink(edge::DownlinkFrame::conn_info(config.conn));
    trace("edge", "CONN_INFO",
          "aa=" + hex32(config.conn.access_address) +
              " hop=" + std::to_string(config.conn.hop_increment));
  });

  // Excitations on the advertising rotation, one per connection event slot,
  // packet counters starting at 0 so a lost first frame still seeds right.
  // When the rotation lands on the advertising channel itself the shift
  // would be zero; the tag skips that slot and the CONNECT_IND goes out on
  // the next one, so allow one extra slot besides the CONNECT_IND's own.
  const uint64_t t_exc0 = t_conninfo_arrival + interval - t_conninfo_arrival % interval;

  const uint64_t total_ticks = config.n_events + 2;
  for (uint64_t j = 0; j < total_ticks; ++j) {
    const uint16_t counter = static_cast<uint16_t>(j);
    const uint64_t t_j = t_exc0 + j * interval;

    // Per-excitation counter frame, subject to the injected downlink loss.
    const uint64_t send_time = t_j > counter_lead ? t_j - counter_lead : 0;
    queue.at(send_time, EventKind::DownlinkSend, [&, counter] {
      if (!model.downlink_delivered()) {
        ++result.downlink_frames_lost;
        return;
      }
      queue.at(queue.now() + counter_lead, EventKind::DownlinkArrive, [&, counter] {
        the_tag.on_downlink(edge::DownlinkFrame::packet_counter(counter));
      });
    });

    queue.at(t_j, EventKind::ExcitationStart, [&, counter, j] {
      const ble::ChannelIndex actual{static_cast<uint8_t>(37 + counter % 3)};
      // WRITE request bytes: L2CAP header, ATT Write Request, handle, value.
      const std::vector<uint8_t> write_payload = {
          0x07, 0x00, 0x04, 0x00, 0x12, 0x25, 0x00,
          static_cast<uint8_t>(j), 0xCD};
      auto emission =
          the_tag.on_excitation(actual, ble::PduType::DataStart, write_payload);
      if (!emission) return;

      if (!emission->on_target) ++result.off_channel_emissions;
      if (emission->intended_target.is_data())
        result.event_channels.push_back(emission->intended_target.value());

      // Deliver to the peer wherever it currently listens.
      const int f_listen = ble::channel_to_frequency_mhz(peer.listen);
      if (f_listen != emission->emitted_freq_mhz &&
          f_listen != emission->mirror_freq_mhz)
        return;
      const auto decoded = ble::parse(emission->onair, peer.listen,
                                      peer.access_address, peer.crc_init);
      if (!decoded.ok()) return;

      if (!peer.connected && decoded.packet.pdu_type == ble::PduType::ConnectInd) {
        if (auto fields = ble::decode_connect_ind(decoded.packet.payload)) {
          trace("ch " + std::to_string(peer.listen.value()), "CONNECT_IND",
                "aa=" + hex32(fields->access_address) +
                    " hop=" + std::to_string(fields->hop_increment) +
                    " interval=" + std::to_string(fields->interval_1250us * 1250) + " us");
          peer.enter_connection(*fields);
          peer.next_event();  // channel for connection event 0
        }
        return;
      }
      if (peer.connected) {
        ++result.write_packets_decoded;
        trace("ch " + std::to_string(peer.listen.value()),
              ble::pdu_type_name(decoded.packet.pdu_type),
              "event=" + std::to_string(result.write_packets_decoded - 1) + " crc=ok");
        peer.next_event();
      }
    });
  }

  queue.run_all();

  // The collision-retry slot can yield one event beyond the request.
  if (result.event_channels.size() > config.n_events)
    result.event_channels.resize(config.n_events);

  // What CSA#1 says the event channels should have been.
  const auto base = hop::make_csa1(config.conn.hop_increment, config.conn.channel_map);
  hop::HopState s = base;
  for (uint32_t k = 0; k < config.n_events; ++k) {
    auto r = hop::csa1_next(s);
    result.oracle_channels.push_back(r.channel.value());
    s = r.state;
  }
  result.oracle_match = result.event_channels == result.oracle_channels;
  return result;
}

}  // namespace channeldance::sim
