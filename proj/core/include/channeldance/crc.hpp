#pragma once

#include <cstdint>
#include <span>

namespace channeldance::ble {

// Link-layer CRC-24, polynomial x^24 + x^10 + x^9 + x^6 + x^4 + x^3 + x + 1.
// The register is preset with `init` (position k of the LFSR in bit k) and
// the input bytes are fed least significant bit first, matching the on-air
// order. The returned word again holds position k in bit k; position 23 is
// the first bit on air.
uint32_t crc24(std::span<const uint8_t> bytes, uint32_t init);

// CRC-8, polynomial 0x07, MSB-first, zero init. Guards the downlink frame.
uint8_t crc8(std::span<const uint8_t> bytes);

}  // namespace channeldance::ble
