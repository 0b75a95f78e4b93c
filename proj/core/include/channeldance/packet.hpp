#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "channeldance/channel.hpp"

namespace channeldance::ble {

// PDU kind carried in the low nibble of the header byte. Advertising
// kinds use the standard codes; the data kinds use the 0x8 block so one
// byte covers both spaces in the simulator.
enum class PduType : uint8_t {
  AdvInd = 0x0,
  AdvDirectInd = 0x1,
  AdvNonconnInd = 0x2,
  ScanReq = 0x3,
  ScanRsp = 0x4,
  ConnectInd = 0x5,
  AdvScanInd = 0x6,
  DataStart = 0x8,
  DataContinuation = 0x9,
  DataControl = 0xA,
};

const char* pdu_type_name(PduType type);

inline constexpr size_t kMaxPayloadBytes = 255;
inline constexpr uint8_t kPreamble = 0xAA;
// preamble + access address + header + CRC
inline constexpr size_t kMinOnAirBytes = 1 + 4 + 2 + 3;

struct LinkLayerPacket {
  uint32_t access_address = kAdvAccessAddress;
  PduType pdu_type = PduType::AdvInd;
  std::vector<uint8_t> payload;
  uint32_t crc = 0;  // filled in by assemble/parse; not part of identity
  ChannelIndex whitening_channel{37};

  friend bool operator==(const LinkLayerPacket& a, const LinkLayerPacket& b) {
    return a.access_address == b.access_address && a.pdu_type == b.pdu_type &&
           a.payload == b.payload && a.whitening_channel == b.whitening_channel;
  }
};

// On-air byte buffer, LSB-first bit order: preamble, access address,
// PDU header, payload, CRC. Header, payload and CRC are whitened with the
// packet's whitening channel. Throws std::invalid_argument when the
// payload exceeds kMaxPayloadBytes.
std::vector<uint8_t> assemble(const LinkLayerPacket& pkt, uint32_t crc_init = kAdvCrcInit);

enum class DecodeStatus : uint8_t { Ok, Truncated, AccessMismatch, CrcFailure };

const char* decode_status_name(DecodeStatus status);

struct Decoded {
  DecodeStatus status = DecodeStatus::Truncated;
  LinkLayerPacket packet;  // meaningful only when ok()
  bool ok() const { return status == DecodeStatus::Ok; }
};

// De-whitens with the listen channel's seed and verifies the CRC. A length
// byte that overruns the buffer is reported as a CRC failure: once the
// receiver is synchronized, any corruption past the access address shows
// up as a failed check, not as a framing error.
Decoded parse(std::span<const uint8_t> onair, ChannelIndex listen_channel,
              uint32_t expected_access_address = kAdvAccessAddress,
              uint32_t crc_init = kAdvCrcInit);

// Bit-sequence variant (values 0/1). Anything shorter than a whole minimal
// packet, or not byte-aligned, is Truncated.
Decoded parse_bits(std::span<const uint8_t> bits, ChannelIndex listen_channel,
                   uint32_t expected_access_address = kAdvAccessAddress,
                   uint32_t crc_init = kAdvCrcInit);

// CONNECT_IND payload (34 bytes): initiator and advertiser addresses plus
// the link parameters the new connection runs with.
struct ConnectIndFields {
  std::array<uint8_t, 6> init_addr{};
  std::array<uint8_t, 6> adv_addr{};
  uint32_t access_address = 0;
  uint32_t crc_init = 0;  // 24-bit
  uint8_t win_size = 1;
  uint16_t win_offset = 0;
  uint16_t interval_1250us = 40;
  uint16_t latency = 0;
  uint16_t timeout_10ms = 100;
  ChannelMap channel_map = ChannelMap::all_data_channels();
  uint8_t hop_increment = 5;  // 5-16
  uint8_t sca = 0;
};

std::vector<uint8_t> encode_connect_ind(const ConnectIndFields& f);
std::optional<ConnectIndFields> decode_connect_ind(std::span<const uint8_t> payload);

}  // namespace channeldance::ble
