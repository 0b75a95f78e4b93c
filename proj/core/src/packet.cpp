#include "channeldance/packet.hpp"

#include <algorithm>
#include <stdexcept>

#include "channeldance/crc.hpp"
#include "channeldance/whitening.hpp"

namespace channeldance::ble {

const char* pdu_type_name(PduType type) {
  switch (type) {
    case PduType::AdvInd: return "ADV_IND";
    case PduType::AdvDirectInd: return "ADV_DIRECT_IND";
    case PduType::AdvNonconnInd: return "ADV_NONCONN_IND";
    case PduType::ScanReq: return "SCAN_REQ";
    case PduType::ScanRsp: return "SCAN_RSP";
    case PduType::ConnectInd: return "CONNECT_IND";
    case PduType::AdvScanInd: return "ADV_SCAN_IND";
    case PduType::DataStart: return "DATA_START";
    case PduType::DataContinuation: return "DATA_CONT";
    case PduType::DataControl: return "DATA_CTRL";
  }
  return "UNKNOWN";
}

const char* decode_status_name(DecodeStatus status) {
  switch (status) {
    case DecodeStatus::Ok: return "ok";
    case DecodeStatus::Truncated: return "truncated";
    case DecodeStatus::AccessMismatch: return "access-mismatch";
    case DecodeStatus::CrcFailure: return "crc-failure";
  }
  return "unknown";
}

namespace {

// CRC transmitted most significant position first; everything else in the
// packet goes out least significant first.
void append_crc(std::vector<uint8_t>& pdu, uint32_t crc) {
  uint32_t onair = 0;  // bit i on air = position 23-i
  for (int i = 0; i < 24; ++i) onair |= (crc >> (23 - i) & 1) << i;
  pdu.push_back(static_cast<uint8_t>(onair));
  pdu.push_back(static_cast<uint8_t>(onair >> 8));
  pdu.push_back(static_cast<uint8_t>(onair >> 16));
}

uint32_t read_crc(std::span<const uint8_t> three) {
  const uint32_t onair = three[0] | uint32_t{three[1]} << 8 | uint32_t{three[2]} << 16;
  uint32_t crc = 0;
  for (int i = 0; i < 24; ++i) crc |= (onair >> i & 1) << (23 - i);
  return crc;
}

}  // namespace

std::vector<uint8_t> assemble(const LinkLayerPacket& pkt, uint32_t crc_init) {
  if (pkt.payload.size() > kMaxPayloadBytes)
    throw std::invalid_argument("payload exceeds 255 bytes");

  std::vector<uint8_t> out;
  out.reserve(kMinOnAirBytes + pkt.payload.size());
  out.push_back(kPreamble);
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<uint8_t>(pkt.access_address >> (8 * i)));

  std::vector<uint8_t> pdu;
  pdu.reserve(2 + pkt.payload.size() + 3);
  pdu.push_back(static_cast<uint8_t>(pkt.pdu_type) & 0x0F);
  pdu.push_back(static_cast<uint8_t>(pkt.payload.size()));
  pdu.insert(pdu.end(), pkt.payload.begin(), pkt.payload.end());
  append_crc(pdu, crc24(std::span(pdu).first(pdu.size()), crc_init));

  whiten_bytes_in_place(pdu, pkt.whitening_channel);
  out.insert(out.end(), pdu.begin(), pdu.end());
  return out;
}

Decoded parse(std::span<const uint8_t> onair, ChannelIndex listen_channel,
              uint32_t expected_access_address, uint32_t crc_init) {
  Decoded result;
  if (onair.size() < kMinOnAirBytes) {
    result.status = DecodeStatus::Truncated;
    return result;
  }

  // Preamble carries no information and is skipped.
  uint32_t aa = 0;
  for (int i = 0; i < 4; ++i) aa |= uint32_t{onair[1 + static_cast<size_t>(i)]} << (8 * i);
  if (aa != expected_access_address) {
    result.status = DecodeStatus::AccessMismatch;
    return result;
  }

  std::vector<uint8_t> pdu(onair.begin() + 5, onair.end());
  whiten_bytes_in_place(pdu, listen_channel);

  const size_t payload_len = pdu[1];
  if (pdu.size() < 2 + payload_len + 3) {
    result.status = DecodeStatus::CrcFailure;
    return result;
  }

  const uint32_t received = read_crc(std::span(pdu).subspan(2 + payload_len, 3));
  const uint32_t computed = crc24(std::span(pdu).first(2 + payload_len), crc_init);
  if (received != computed) {
    result.status = DecodeStatus::CrcFailure;
    return result;
  }

  result.status = DecodeStatus::Ok;
  result.packet.access_address = aa;
  result.packet.pdu_type = static_cast<PduType>(pdu[0] & 0x0F);
  result.packet.payload.assign(pdu.begin() + 2, pdu.begin() + 2 + static_cast<long>(payload_len));
  result.packet.crc = received;
  result.packet.whitening_channel = listen_channel;
  return result;
}

Decoded parse_bits(std::span<const uint8_t> bits, ChannelIndex listen_channel,
                   uint32_t expected_access_address, uint32_t crc_init) {
  if (bits.size() % 8 != 0 || bits.size() < kMinOnAirBytes * 8) {
    Decoded result;
    result.status = DecodeStatus::Truncated;
    return result;
  }
  const auto bytes = bits_to_bytes(bits);
  return parse(bytes, listen_channel, expected_access_address, crc_init);
}

std::vector<uint8_t> encode_connect_ind(const ConnectIndFields& f) {
  std::vector<uint8_t> p;
  p.reserve(34);
  p.insert(p.end(), f.init_addr.begin(), f.init_addr.end());
  p.insert(p.end(), f.adv_addr.begin(), f.adv_addr.end());
  for (int i = 0; i < 4; ++i) p.push_back(static_cast<uint8_t>(f.access_address >> (8 * i)));
  for (int i = 0; i < 3; ++i) p.push_back(static_cast<uint8_t>(f.crc_init >> (8 * i)));
  p.push_back(f.win_size);
  p.push_back(static_cast<uint8_t>(f.win_offset));
  p.push_back(static_cast<uint8_t>(f.win_offset >> 8));
  p.push_back(static_cast<uint8_t>(f.interval_1250us));
  p.push_back(static_cast<uint8_t>(f.interval_1250us >> 8));
  p.push_back(static_cast<uint8_t>(f.latency));
  p.push_back(static_cast<uint8_t>(f.latency >> 8));
  p.push_back(static_cast<uint8_t>(f.timeout_10ms));
  p.push_back(static_cast<uint8_t>(f.timeout_10ms >> 8));
  const auto map = f.channel_map.to_bytes();
  p.insert(p.end(), map.begin(), map.end());
  p.push_back(static_cast<uint8_t>((f.hop_increment & 0x1F) | ((f.sca & 0x07) << 5)));
  return p;
}

std::optional<ConnectIndFields> decode_connect_ind(std::span<const uint8_t> p) {
  if (p.size() != 34) return std::nullopt;
  ConnectIndFields f;
  std::copy(p.begin(), p.begin() + 6, f.init_addr.begin());
  std::copy(p.begin() + 6, p.begin() + 12, f.adv_addr.begin());
  f.access_address = 0;
  for (int i = 0; i < 4; ++i) f.access_address |= uint32_t{p[12 + static_cast<size_t>(i)]} << (8 * i);
  f.crc_init = 0;
  for (int i = 0; i < 3; ++i) f.crc_init |= uint32_t{p[16 + static_cast<size_t>(i)]} << (8 * i);
  f.win_size = p[19];
  f.win_offset = static_cast<uint16_t>(p[20] | p[21] << 8);
  f.interval_1250us = static_cast<uint16_t>(p[22] | p[23] << 8);
  f.latency = static_cast<uint16_t>(p[24] | p[25] << 8);
  f.timeout_10ms = static_cast<uint16_t>(p[26] | p[27] << 8);
  auto map = ChannelMap::from_bytes(p.subspan(28, 5));
  if (!map) return std::nullopt;
  f.channel_map = *map;
  f.hop_increment = p[33] & 0x1F;
  f.sca = p[33] >> 5 & 0x07;
  if (f.hop_increment < 5 || f.hop_increment > 16) return std::nullopt;
  return f;
}

}  // namespace channeldance::ble
