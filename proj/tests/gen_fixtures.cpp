// Generates the frozen conformance fixtures from the test oracles alone:
//   vectors/csa2_vectors.csv      CSA#2 selections over counters/AAs/maps
//   vectors/link_layer_golden.csv on-air reference packets, packed by hand
// Run manually; the outputs are committed and the test suites read them.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"

namespace {

std::vector<uint8_t> used_from_mask(uint64_t mask) {
  std::vector<uint8_t> used;
  for (uint8_t ch = 0; ch < 37; ++ch)
    if (mask >> ch & 1) used.push_back(ch);
  return used;
}

std::string hex_bytes(const std::vector<uint8_t>& bytes) {
  std::string out;
  char buf[4];
  for (uint8_t b : bytes) {
    std::snprintf(buf, sizeof buf, "%02X", b);
    out += buf;
  }
  return out;
}

// On-air packet from the oracles: preamble, access address, then the
// whitened PDU+CRC, everything packed LSB-first by hand.
std::vector<uint8_t> build_onair(uint32_t aa, uint8_t pdu_type, uint8_t channel,
                                 uint32_t crc_init, const std::vector<uint8_t>& payload) {
  std::vector<uint8_t> pdu;
  pdu.push_back(pdu_type);
  pdu.push_back(static_cast<uint8_t>(payload.size()));
  pdu.insert(pdu.end(), payload.begin(), payload.end());

  const uint32_t crc = oracles::crc24(pdu, crc_init);
  // CRC goes out position 23 first; on-air bit b is position 23-b.
  for (int byte = 0; byte < 3; ++byte) {
    uint8_t v = 0;
    for (int bit = 0; bit < 8; ++bit) {
      const int onair_index = byte * 8 + bit;
      v |= static_cast<uint8_t>((crc >> (23 - onair_index) & 1) << bit);
    }
    pdu.push_back(v);
  }

  const auto stream = oracles::whitening_stream(channel, pdu.size() * 8);
  for (size_t i = 0; i < pdu.size(); ++i) {
    uint8_t mask = 0;
    for (int bit = 0; bit < 8; ++bit)
      mask |= static_cast<uint8_t>(stream[i * 8 + static_cast<size_t>(bit)] << bit);
    pdu[i] ^= mask;
  }

  std::vector<uint8_t> onair;
  onair.push_back(0xAA);
  for (int i = 0; i < 4; ++i) onair.push_back(static_cast<uint8_t>(aa >> (8 * i)));
  onair.insert(onair.end(), pdu.begin(), pdu.end());
  return onair;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures/vectors";
  std::filesystem::create_directories(dir);

  {
    std::ofstream out(dir / "csa2_vectors.csv");
    out << "event_counter,access_address,channel_map,expected_channel\n";

    const uint32_t aas[] = {0x8E89BED6, 0x50123456, 0xA0B1C2D3, 0x11223344,
                            0xDEADBEEF, 0x8E89BED7};
    const uint64_t maps[] = {
        0x1FFFFFFFFFull,                    // all 37
        0x00000001FFull,                    // 0-8
        0x00FFFE0000ull,                    // 17-31
        (1ull << 15) | (1ull << 30),        // the two-channel map
        0x1000000001ull,                    // 0 and 36
        0x0555555555ull,                    // even channels
    };
    const uint16_t counters[] = {0, 1,   2,    3,    4,     5,    6,
                                 7, 100, 1000, 5000, 12345, 65535};

    char line[96];
    for (uint32_t aa : aas) {
      for (uint64_t mask : maps) {
        const auto used = used_from_mask(mask);
        for (uint16_t counter : counters) {
          const uint8_t expected = oracles::csa2_channel(counter, aa, used);
          std::snprintf(line, sizeof line, "%u,0x%08X,0x%010llX,%u\n", counter, aa,
                        static_cast<unsigned long long>(mask), expected);
          out << line;
        }
      }
    }
  }

  {
    std::ofstream out(dir / "link_layer_golden.csv");
    out << "name,access_address,pdu_type,whitening_channel,crc_init,payload_hex,"
           "onair_hex\n";

    struct Vector {
      const char* name;
      uint32_t aa;
      uint8_t pdu_type;
      uint8_t channel;
      uint32_t crc_init;
      std::vector<uint8_t> payload;
    };
    const Vector vectors[] = {
        {"adv_ind_ch37", 0x8E89BED6, 0x0, 37, 0x555555,
         {0xC0, 0xDA, 0x0C, 0xE0, 0x00, 0x01, 0x02, 0x01, 0x06}},
        {"adv_nonconn_ch39", 0x8E89BED6, 0x2, 39, 0x555555,
         {0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x1E, 0xFF, 0x00, 0x01}},
        {"data_start_ch15", 0x50123456, 0x8, 15, 0x123456, {0xDE, 0xAD, 0xBE, 0xEF}},
        {"data_empty_ch0", 0x50123456, 0x9, 0, 0x123456, {}},
    };
    char buf[32];
    for (const auto& v : vectors) {
      const auto onair = build_onair(v.aa, v.pdu_type, v.channel, v.crc_init, v.payload);
      out << v.name << ',';
      std::snprintf(buf, sizeof buf, "0x%08X,%u,%u,0x%06X,", v.aa, v.pdu_type, v.channel,
                    v.crc_init);
      out << buf << hex_bytes(v.payload) << ',' << hex_bytes(onair) << '\n';
    }
  }

  std::printf("fixtures written under %s\n", dir.string().c_str());
  return 0;
}
