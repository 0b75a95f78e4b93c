#pragma once

// Independent reference implementations used as test oracles. Everything
// here is written directly against the published register diagrams and
// algorithm descriptions, deliberately in a different shape than the
// library code, and must stay independent of it.

#include <cstdint>
#include <span>
#include <vector>

namespace oracles {

// Whitening stream from a literal 7-position LFSR (x^7 + x^4 + 1):
// position 0 seeded with 1, positions 1-6 with the channel index MSB
// first; output taken from position 6.
std::vector<uint8_t> whitening_stream(uint8_t channel, size_t n_bits);

// CRC-24 from a literal 24-position LFSR: feedback = input xor position 23,
// entering position 0 and the taps at 1, 3, 4, 6, 9, 10. Position k of the
// result sits in bit k. Input bytes are fed least significant bit first.
uint32_t crc24(std::span<const uint8_t> bytes, uint32_t init);

// RF-switch control values (0 = no phase, 1 = pi) from brute-force phase
// accumulation in floating point, reduced mod 2*pi.
std::vector<uint8_t> phase_controls(std::span<const uint8_t> bits);

// CSA#2 selection: channel identifier from the access address halves,
// three permute + multiply-add-modulo rounds, unmapped channel mod 37,
// remap by (N * prn_e) >> 16 into the ascending used list.
uint8_t csa2_channel(uint16_t event_counter, uint32_t access_address,
                     std::span<const uint8_t> used_sorted);

// CSA#1 expected histogram over n events by cycle counting: the unmapped
// sequence has period 37, so count one explicit cycle and scale, then walk
// the remainder.
std::vector<uint64_t> csa1_histogram(uint8_t last_unmapped, uint8_t hop_increment,
                                     std::span<const uint8_t> used_sorted,
                                     uint64_t n_events);

}  // namespace oracles
