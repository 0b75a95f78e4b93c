#include "channeldance/crc.hpp"

namespace channeldance::ble {

namespace {

// Feedback taps of the CRC-24 polynomial below position 24: the feedback
// enters position 0 and XORs into positions 1, 3, 4, 6, 9 and 10.
constexpr uint32_t kCrc24Feedback = 0x00065B;

}  // namespace

uint32_t crc24(std::span<const uint8_t> bytes, uint32_t init) {
  uint32_t state = init & 0xFFFFFF;
  for (uint8_t byte : bytes) {
    for (int i = 0; i < 8; ++i) {
      const uint32_t fb = (state >> 23 ^ byte >> i) & 1;
      state = state << 1 & 0xFFFFFF;
      if (fb) state ^= kCrc24Feedback;
    }
  }
  return state;
}

uint8_t crc8(std::span<const uint8_t> bytes) {
  uint8_t crc = 0;
  for (uint8_t byte : bytes) {
    crc ^= byte;
    for (int i = 0; i < 8; ++i)
      crc = crc & 0x80 ? static_cast<uint8_t>(crc << 1 ^ 0x07)
                       : static_cast<uint8_t>(crc << 1);
  }
  return crc;
}

}  // namespace channeldance::ble
