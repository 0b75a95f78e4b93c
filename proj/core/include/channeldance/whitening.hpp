#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "channeldance/channel.hpp"

namespace channeldance::ble {

// Data whitening LFSR, x^7 + x^4 + 1. The register is seeded with a 1 in
// position 0 followed by the six channel-index bits, most significant
// first, so the seed is never all-zero.
class Whitener {
 public:
  explicit Whitener(ChannelIndex ch);

  uint8_t next_bit();
  // Next 8 stream bits packed LSB-first.
  uint8_t next_byte();

 private:
  uint8_t reg_;  // position k of the LFSR in bit k
};

// First n bits of the whitening stream for a channel (values 0/1).
std::vector<uint8_t> whitening_stream(ChannelIndex ch, size_t n);

// XOR a bit sequence (values 0/1) with the channel's whitening stream.
// Applying twice with the same channel restores the input.
std::vector<uint8_t> whiten_bits(std::span<const uint8_t> bits, ChannelIndex ch);

// Same operation on a byte-packed buffer with LSB-first bit order.
std::vector<uint8_t> whiten_bytes(std::span<const uint8_t> bytes, ChannelIndex ch);
void whiten_bytes_in_place(std::span<uint8_t> bytes, ChannelIndex ch);

// LSB-first packing between byte buffers and bit sequences.
std::vector<uint8_t> bytes_to_bits(std::span<const uint8_t> bytes);
// Requires bits.size() % 8 == 0; bit values must be 0 or 1.
std::vector<uint8_t> bits_to_bytes(std::span<const uint8_t> bits);

}  // namespace channeldance::ble
