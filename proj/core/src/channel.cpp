#include "channeldance/channel.hpp"

#include <bit>
#include <utility>

namespace channeldance::ble {

int channel_to_frequency_mhz(ChannelIndex ch) {
  const uint8_t i = ch.value();
  if (i == 37) return 2402;
  if (i == 38) return 2426;
  if (i == 39) return 2480;
  if (i <= 10) return 2404 + 2 * i;
  return 2428 + 2 * (i - 11);  // 11..36
}

std::optional<ChannelIndex> channel_at_frequency(int frequency_mhz) {
  if (frequency_mhz < 2402 || frequency_mhz > 2480 || frequency_mhz % 2 != 0)
    return std::nullopt;
  switch (frequency_mhz) {
    case 2402: return ChannelIndex{37};
    case 2426: return ChannelIndex{38};
    case 2480: return ChannelIndex{39};
    default: break;
  }
  if (frequency_mhz < 2426)
    return ChannelIndex{static_cast<uint8_t>((frequency_mhz - 2404) / 2)};
  return ChannelIndex{static_cast<uint8_t>(11 + (frequency_mhz - 2428) / 2)};
}

ChannelIndex frequency_to_channel(int frequency_mhz) {
  auto ch = channel_at_frequency(frequency_mhz);
  if (!ch) throw std::domain_error("not a BLE channel center frequency");
  return *ch;
}

const std::array<ChannelIndex, kChannelCount>& channels_by_frequency() {
  static const auto order = []<size_t... I>(std::index_sequence<I...>) {
    return std::array<ChannelIndex, kChannelCount>{
        frequency_to_channel(2402 + 2 * static_cast<int>(I))...};
  }(std::make_index_sequence<kChannelCount>{});
  return order;
}

ChannelMap::ChannelMap(uint64_t bits) : bits_(bits) {
  count_ = std::popcount(bits_);
  sorted_.reserve(static_cast<size_t>(count_));
  for (uint8_t i = 0; i < kDataChannelCount; ++i)
    if (bits_ >> i & 1) sorted_.emplace_back(i);
}

ChannelMap ChannelMap::from_bits(uint64_t bits) {
  if (bits >> kDataChannelCount)
    throw std::invalid_argument("channel map has bits above channel 36");
  if (std::popcount(bits) < 2)
    throw std::invalid_argument("channel map needs at least two used channels");
  return ChannelMap{bits};
}

ChannelMap ChannelMap::from_channels(std::span<const uint8_t> channels) {
  uint64_t bits = 0;
  for (uint8_t c : channels) {
    if (c >= kDataChannelCount)
      throw std::invalid_argument("channel map entries must be data channels (0-36)");
    bits |= uint64_t{1} << c;
  }
  return from_bits(bits);
}

ChannelMap ChannelMap::from_channels(std::initializer_list<uint8_t> channels) {
  return from_channels(std::span<const uint8_t>(channels.begin(), channels.size()));
}

ChannelMap ChannelMap::all_data_channels() {
  return ChannelMap{(uint64_t{1} << kDataChannelCount) - 1};
}

std::optional<ChannelMap> ChannelMap::from_bytes(std::span<const uint8_t> bytes) {
  if (bytes.size() != 5) return std::nullopt;
  uint64_t bits = 0;
  for (size_t i = 0; i < 5; ++i) bits |= uint64_t{bytes[i]} << (8 * i);
  if (bits >> kDataChannelCount) return std::nullopt;
  if (std::popcount(bits) < 2) return std::nullopt;
  return ChannelMap{bits};
}

std::array<uint8_t, 5> ChannelMap::to_bytes() const {
  std::array<uint8_t, 5> out{};
  for (size_t i = 0; i < 5; ++i) out[i] = static_cast<uint8_t>(bits_ >> (8 * i));
  return out;
}

bool ChannelMap::contains(ChannelIndex ch) const {
  return ch.is_data() && (bits_ >> ch.value() & 1);
}

}  // namespace channeldance::ble
