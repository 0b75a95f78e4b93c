#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace oracles {

std::vector<uint8_t> whitening_stream(uint8_t channel, size_t n_bits) {
  std::array<uint8_t, 7> pos{};
  pos[0] = 1;
  for (int i = 0; i < 6; ++i) pos[static_cast<size_t>(1 + i)] = channel >> (5 - i) & 1;

  std::vector<uint8_t> out;
  out.reserve(n_bits);
  for (size_t i = 0; i < n_bits; ++i) {
    const uint8_t fb = pos[6];
    out.push_back(fb);
    std::array<uint8_t, 7> next{};
    next[0] = fb;
    next[1] = pos[0];
    next[2] = pos[1];
    next[3] = pos[2];
    next[4] = static_cast<uint8_t>(pos[3] ^ fb);
    next[5] = pos[4];
    next[6] = pos[5];
    pos = next;
  }
  return out;
}

uint32_t crc24(std::span<const uint8_t> bytes, uint32_t init) {
  std::array<uint8_t, 24> pos{};
  for (int i = 0; i < 24; ++i) pos[static_cast<size_t>(i)] = init >> i & 1;

  for (uint8_t byte : bytes) {
    for (int bit = 0; bit < 8; ++bit) {
      const uint8_t in = byte >> bit & 1;
      const uint8_t fb = static_cast<uint8_t>(in ^ pos[23]);
      std::array<uint8_t, 24> next{};
      next[0] = fb;
      for (int k = 1; k < 24; ++k) next[static_cast<size_t>(k)] = pos[static_cast<size_t>(k - 1)];
      next[1] = static_cast<uint8_t>(next[1] ^ fb);
      next[3] = static_cast<uint8_t>(next[3] ^ fb);
      next[4] = static_cast<uint8_t>(next[4] ^ fb);
      next[6] = static_cast<uint8_t>(next[6] ^ fb);
      next[9] = static_cast<uint8_t>(next[9] ^ fb);
      next[10] = static_cast<uint8_t>(next[10] ^ fb);
      pos = next;
    }
  }

  uint32_t out = 0;
  for (int i = 0; i < 24; ++i) out |= uint32_t{pos[static_cast<size_t>(i)]} << i;
  return out;
}

std::vector<uint8_t> phase_controls(std::span<const uint8_t> bits) {
  const double pi = std::acos(-1.0);
  double phase = 0.0;
  std::vector<uint8_t> out;
  out.reserve(bits.size());
  for (uint8_t bit : bits) {
    phase += bit ? pi : 0.0;
    double reduced = std::fmod(phase, 2.0 * pi);
    if (reduced < 0) reduced += 2.0 * pi;
    // Snap to the nearest of {0, pi, 2*pi}.
    const uint8_t control = std::abs(reduced - pi) < pi / 2 ? 1 : 0;
    out.push_back(control);
  }
  return out;
}

namespace {

uint8_t reverse_byte(uint8_t v) {
  uint8_t out = 0;
  for (int i = 0; i < 8; ++i)
    if (v & 1 << i) out |= uint8_t(1) << (7 - i);
  return out;
}

}  // namespace

uint8_t csa2_channel(uint16_t event_counter, uint32_t access_address,
                     std::span<const uint8_t> used_sorted) {
  const uint16_t identifier =
      static_cast<uint16_t>((access_address >> 16 & 0xFFFF) ^ (access_address & 0xFFFF));

  uint32_t prn = static_cast<uint16_t>(event_counter ^ identifier);
  for (int round = 0; round < 3; ++round) {
    const uint8_t lo = reverse_byte(static_cast<uint8_t>(prn));
    const uint8_t hi = reverse_byte(static_cast<uint8_t>(prn >> 8));
    prn = static_cast<uint32_t>(hi) << 8 | lo;           // permute
    prn = (prn * 17u + identifier) % 65536u;             // multiply, add, modulo
  }
  const uint16_t prn_e = static_cast<uint16_t>(prn ^ identifier);

  const uint8_t unmapped = static_cast<uint8_t>(prn_e % 37);
  if (std::find(used_sorted.begin(), used_sorted.end(), unmapped) != used_sorted.end())
    return unmapped;
  const uint64_t index = static_cast<uint64_t>(used_sorted.size()) * prn_e / 65536u;
  return used_sorted[static_cast<size_t>(index)];
}

std::vector<uint64_t> csa1_histogram(uint8_t last_unmapped, uint8_t hop_increment,
                                     std::span<const uint8_t> used_sorted,
                                     uint64_t n_events) {
  const auto select = [&](uint8_t unmapped) -> uint8_t {
    if (std::find(used_sorted.begin(), used_sorted.end(), unmapped) != used_sorted.end())
      return unmapped;
    return used_sorted[unmapped % used_sorted.size()];
  };

  // One full period of the unmapped walk.
  std::vector<uint64_t> per_cycle(40, 0);
  uint8_t u = last_unmapped;
  std::vector<uint8_t> cycle;
  for (int i = 0; i < 37; ++i) {
    u = static_cast<uint8_t>((u + hop_increment) % 37);
    cycle.push_back(u);
    ++per_cycle[select(u)];
  }

  std::vector<uint64_t> counts(40, 0);
  const uint64_t full_cycles = n_events / 37;
  for (int ch = 0; ch < 40; ++ch)
    counts[static_cast<size_t>(ch)] = per_cycle[static_cast<size_t>(ch)] * full_cycles;
  for (uint64_t i = 0; i < n_events % 37; ++i) ++counts[select(cycle[i])];
  return counts;
}

}  // namespace oracles
