#pragma once

#include <cstdint>

namespace channeldance::sim {

// splitmix64: tiny, well-distributed, and bit-identical everywhere, which
// the byte-identical-output guarantee depends on.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = state_ += 0x9E3779B97F4A7C15ull;
    z = (z ^ z >> 30) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ z >> 27) * 0x94D049BB133111EBull;
    return z ^ z >> 31;
  }

  // Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return p > 0.0 && next_unit() < p; }

 private:
  uint64_t state_;
};

// Decorrelates substreams of one seed so each (excitation, target) pair
// draws from its own independent sequence.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream_id) {
  SplitMix64 g(seed ^ 0xA24BAED4963EE407ull * (stream_id + 1));
  return g.next();
}

}  // namespace channeldance::sim
