#include "channeldance/whitening.hpp"

#include <stdexcept>

namespace channeldance::ble {

namespace {

// Reverse the low 6 bits of a channel index.
constexpr uint8_t reverse6(uint8_t v) {
  uint8_t out = 0;
  for (int i = 0; i < 6; ++i)
    if (v >> i & 1) out |= uint8_t(1) << (5 - i);
  return out;
}

}  // namespace

Whitener::Whitener(ChannelIndex ch)
    // bit 0 = position 0 (always 1), bits 1..6 = channel index MSB first
    : reg_(static_cast<uint8_t>(1 | reverse6(ch.value()) << 1)) {}

uint8_t Whitener::next_bit() {
  const uint8_t out = reg_ >> 6 & 1;       // position 6 is the output
  reg_ = static_cast<uint8_t>((reg_ << 1 | out) & 0x7F);
  if (out) reg_ ^= 0x10;                   // feedback tap into position 4
  return out;
}

uint8_t Whitener::next_byte() {
  uint8_t b = 0;
  for (int i = 0; i < 8; ++i) b |= static_cast<uint8_t>(next_bit() << i);
  return b;
}

std::vector<uint8_t> whitening_stream(ChannelIndex ch, size_t n) {
  Whitener w{ch};
  std::vector<uint8_t> out(n);
  for (auto& bit : out) bit = w.next_bit();
  return out;
}

std::vector<uint8_t> whiten_bits(std::span<const uint8_t> bits, ChannelIndex ch) {
  Whitener w{ch};
  std::vector<uint8_t> out(bits.size());
  for (size_t i = 0; i < bits.size(); ++i)
    out[i] = static_cast<uint8_t>((bits[i] & 1) ^ w.next_bit());
  return out;
}

void whiten_bytes_in_place(std::span<uint8_t> bytes, ChannelIndex ch) {
  Whitener w{ch};
  for (auto& b : bytes) b ^= w.next_byte();
}

std::vector<uint8_t> whiten_bytes(std::span<const uint8_t> bytes, ChannelIndex ch) {
  std::vector<uint8_t> out(bytes.begin(), bytes.end());
  whiten_bytes_in_place(out, ch);
  return out;
}

std::vector<uint8_t> bytes_to_bits(std::span<const uint8_t> bytes) {
  std::vector<uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (uint8_t b : bytes)
    for (int i = 0; i < 8; ++i) bits.push_back(b >> i & 1);
  return bits;
}

std::vector<uint8_t> bits_to_bytes(std::span<const uint8_t> bits) {
  if (bits.size() % 8 != 0)
    throw std::invalid_argument("bit sequence is not byte-aligned");
  std::vector<uint8_t> bytes(bits.size() / 8, 0);
  for (size_t i = 0; i < bits.size(); ++i)
    bytes[i / 8] |= static_cast<uint8_t>((bits[i] & 1) << (i % 8));
  return bytes;
}

}  // namespace channeldance::ble
