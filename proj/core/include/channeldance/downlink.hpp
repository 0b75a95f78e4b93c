#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "channeldance/channel.hpp"

namespace channeldance::edge {

// Connection parameters the edge hands to the tag so it can follow a link:
// wire layout aa(4) crc_init(3) hop(1) map(5) interval_us(4), little-endian.
struct ConnParams {
  uint32_t access_address = 0;
  uint32_t crc_init = 0;  // 24-bit
  uint8_t hop_increment = 5;
  ble::ChannelMap channel_map = ble::ChannelMap::all_data_channels();
  uint32_t interval_us = 50000;

  bool operator==(const ConnParams&) const = default;
};

enum class FrameKind : uint8_t {
  Start = 0x01,
  ChannelInfo = 0x02,
  PacketCounter = 0x03,
  ChannelMapUpdate = 0x04,
  ConnInfo = 0x05,
};

const char* frame_kind_name(FrameKind kind);

// Edge-to-tag command frame. Wire format, bit exact:
//   [0xAA preamble][kind:1][len:1][payload:len][crc8:1]
// with CRC-8 (poly 0x07) over kind, len and payload.
struct DownlinkFrame {
  FrameKind kind = FrameKind::Start;
  std::vector<uint8_t> payload;

  static DownlinkFrame start();
  static DownlinkFrame channel_info(ble::ChannelIndex ch);
  static DownlinkFrame packet_counter(uint16_t counter);
  static DownlinkFrame channel_map_update(const ble::ChannelMap& map);
  static DownlinkFrame conn_info(const ConnParams& params);

  // Typed payload accessors; nothing when the kind or size does not match.
  std::optional<ble::ChannelIndex> as_channel_info() const;
  std::optional<uint16_t> as_packet_counter() const;
  std::optional<ble::ChannelMap> as_channel_map_update() const;
  std::optional<ConnParams> as_conn_info() const;

  bool operator==(const DownlinkFrame&) const = default;
};

inline constexpr uint8_t kFramePreamble = 0xAA;

// Expected payload size for a kind; ConnInfo returns its fixed 17 bytes.
size_t frame_payload_size(FrameKind kind);

// Throws std::invalid_argument when payload length does not match the kind.
std::vector<uint8_t> frame_encode(const DownlinkFrame& frame);

// Checks preamble, structure and checksum; any single corrupted byte makes
// this return nothing, which the tag treats like a missed frame.
std::optional<DownlinkFrame> frame_decode(std::span<const uint8_t> bytes);

}  // namespace channeldance::edge
