#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace channeldance::ble {

inline constexpr int kChannelCount = 40;
inline constexpr int kDataChannelCount = 37;

// Advertising access address and CRC preset, fixed by the link layer.
inline constexpr uint32_t kAdvAccessAddress = 0x8E89BED6u;
inline constexpr uint32_t kAdvCrcInit = 0x555555u;

// BLE channel number. 0-36 are data channels, 37-39 advertising channels.
class ChannelIndex {
 public:
  constexpr explicit ChannelIndex(uint8_t index) : index_(index) {
    if (index > 39) throw std::invalid_argument("channel index out of range (0-39)");
  }

  constexpr uint8_t value() const { return index_; }
  constexpr bool is_advertising() const { return index_ >= 37; }
  constexpr bool is_data() const { return index_ < 37; }

  constexpr auto operator<=>(const ChannelIndex&) const = default;

 private:
  uint8_t index_;
};

// Center frequency in MHz. Channels sit on a 2 MHz grid from 2402 to 2480;
// the advertising channels 37/38/39 are at 2402/2426/2480.
int channel_to_frequency_mhz(ChannelIndex ch);

// Inverse of channel_to_frequency_mhz. Throws std::domain_error for
// frequencies that are not a channel center.
ChannelIndex frequency_to_channel(int frequency_mhz);

// Channel at a center frequency, or nothing when the frequency is off-grid
// or outside the band.
std::optional<ChannelIndex> channel_at_frequency(int frequency_mhz);

// All 40 channels ordered by center frequency: 37, 0..10, 38, 11..36, 39.
const std::array<ChannelIndex, kChannelCount>& channels_by_frequency();

// Set of data channels a hopping link may use. Always holds at least two
// channels; only indices 0-36 are representable.
class ChannelMap {
 public:
  static ChannelMap from_channels(std::span<const uint8_t> channels);
  static ChannelMap from_channels(std::initializer_list<uint8_t> channels);
  static ChannelMap all_data_channels();

  // Low 37 bits, bit k set = data channel k used.
  static ChannelMap from_bits(uint64_t bits);

  // 5-byte little-endian packing, top 3 bits of the last byte must be zero.
  static std::optional<ChannelMap> from_bytes(std::span<const uint8_t> bytes);
  std::array<uint8_t, 5> to_bytes() const;

  bool contains(ChannelIndex ch) const;
  int count() const { return count_; }
  uint64_t bits() const { return bits_; }

  // Used channels in ascending index order (the remapping order).
  const std::vector<ChannelIndex>& used_sorted() const { return sorted_; }

  bool operator==(const ChannelMap& other) const { return bits_ == other.bits_; }

 private:
  explicit ChannelMap(uint64_t bits);

  uint64_t bits_ = 0;
  int count_ = 0;
  std::vector<ChannelIndex> sorted_;
};

}  // namespace channeldance::ble
