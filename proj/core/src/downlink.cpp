#include "channeldance/downlink.hpp"

#include <stdexcept>

#include "channeldance/crc.hpp"

namespace channeldance::edge {

const char* frame_kind_name(FrameKind kind) {
  switch (kind) {
    case FrameKind::Start: return "START";
    case FrameKind::ChannelInfo: return "CHANNEL_INFO";
    case FrameKind::PacketCounter: return "PACKET_COUNTER";
    case FrameKind::ChannelMapUpdate: return "CHANNEL_MAP_UPDATE";
    case FrameKind::ConnInfo: return "CONN_INFO";
  }
  return "UNKNOWN";
}

size_t frame_payload_size(FrameKind kind) {
  switch (kind) {
    case FrameKind::Start: return 0;
    case FrameKind::ChannelInfo: return 1;
    case FrameKind::PacketCounter: return 2;
    case FrameKind::ChannelMapUpdate: return 5;
    case FrameKind::ConnInfo: return 17;
  }
  throw std::invalid_argument("unknown frame kind");
}

DownlinkFrame DownlinkFrame::start() { return DownlinkFrame{FrameKind::Start, {}}; }

DownlinkFrame DownlinkFrame::channel_info(ble::ChannelIndex ch) {
  return DownlinkFrame{FrameKind::ChannelInfo, {ch.value()}};
}

DownlinkFrame DownlinkFrame::packet_counter(uint16_t counter) {
  return DownlinkFrame{FrameKind::PacketCounter,
                       {static_cast<uint8_t>(counter), static_cast<uint8_t>(counter >> 8)}};
}

DownlinkFrame DownlinkFrame::channel_map_update(const ble::ChannelMap& map) {
  const auto bytes = map.to_bytes();
  return DownlinkFrame{FrameKind::ChannelMapUpdate, {bytes.begin(), bytes.end()}};
}

DownlinkFrame DownlinkFrame::conn_info(const ConnParams& p) {
  std::vector<uint8_t> payload;
  payload.reserve(17);
  for (int i = 0; i < 4; ++i) payload.push_back(static_cast<uint8_t>(p.access_address >> (8 * i)));
  for (int i = 0; i < 3; ++i) payload.push_back(static_cast<uint8_t>(p.crc_init >> (8 * i)));
  payload.push_back(p.hop_increment);
  const auto map = p.channel_map.to_bytes();
  payload.insert(payload.end(), map.begin(), map.end());
  for (int i = 0; i < 4; ++i) payload.push_back(static_cast<uint8_t>(p.interval_us >> (8 * i)));
  return DownlinkFrame{FrameKind::ConnInfo, std::move(payload)};
}

std::optional<ble::ChannelIndex> DownlinkFrame::as_channel_info() const {
  if (kind != FrameKind::ChannelInfo || payload.size() != 1 || payload[0] > 39)
    return std::nullopt;
  return ble::ChannelIndex{payload[0]};
}

std::optional<uint16_t> DownlinkFrame::as_packet_counter() const {
  if (kind != FrameKind::PacketCounter || payload.size() != 2) return std::nullopt;
  return static_cast<uint16_t>(payload[0] | payload[1] << 8);
}

std::optional<ble::ChannelMap> DownlinkFrame::as_channel_map_update() const {
  if (kind != FrameKind::ChannelMapUpdate || payload.size() != 5) return std::nullopt;
  return ble::ChannelMap::from_bytes(payload);
}

std::optional<ConnParams> DownlinkFrame::as_conn_info() const {
  if (kind != FrameKind::ConnInfo || payload.size() != 17) return std::nullopt;
  ConnParams p;
  p.access_address = 0;
  for (int i = 0; i < 4; ++i) p.access_address |= uint32_t{payload[static_cast<size_t>(i)]} << (8 * i);
  p.crc_init = 0;
  for (int i = 0; i < 3; ++i) p.crc_init |= uint32_t{payload[4 + static_cast<size_t>(i)]} << (8 * i);
  p.hop_increment = payload[7];
  if (p.hop_increment < 5 || p.hop_increment > 16) return std::nullopt;
  auto map = ble::ChannelMap::from_bytes(std::span(payload).subspan(8, 5));
  if (!map) return std::nullopt;
  p.channel_map = *map;
  p.interval_us = 0;
  for (int i = 0; i < 4; ++i) p.interval_us |= uint32_t{payload[13 + static_cast<size_t>(i)]} << (8 * i);
  return p;
}

std::vector<uint8_t> frame_encode(const DownlinkFrame& frame) {
  if (frame.payload.size() != frame_payload_size(frame.kind))
    throw std::invalid_argument("payload length does not match frame kind");
  std::vector<uint8_t> out;
  out.reserve(4 + frame.payload.size());
  out.push_back(kFramePreamble);
  out.push_back(static_cast<uint8_t>(frame.kind));
  out.push_back(static_cast<uint8_t>(frame.payload.size()));
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  out.push_back(ble::crc8(std::span(out).subspan(1)));
  return out;
}

std::optional<DownlinkFrame> frame_decode(std::span<const uint8_t> bytes) {
  if (bytes.size() < 4 || bytes[0] != kFramePreamble) return std::nullopt;
  const uint8_t kind_byte = bytes[1];
  if (kind_byte < static_cast<uint8_t>(FrameKind::Start) ||
      kind_byte > static_cast<uint8_t>(FrameKind::ConnInfo))
    return std::nullopt;
  const FrameKind kind = static_cast<FrameKind>(kind_byte);
  const size_t len = bytes[2];
  if (len != frame_payload_size(kind) || bytes.size() != 4 + len) return std::nullopt;
  if (ble::crc8(bytes.subspan(1, 2 + len)) != bytes[3 + len]) return std::nullopt;
  DownlinkFrame frame;
  frame.kind = kind;
  frame.payload.assign(bytes.begin() + 3, bytes.begin() + 3 + static_cast<long>(len));
  return frame;
}

}  // namespace channeldance::edge
