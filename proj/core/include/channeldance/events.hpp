#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

namespace channeldance::sim {

// Kinds double as same-timestamp priorities: a downlink that lands exactly
// at an excitation edge counts for that excitation.
enum class EventKind : uint8_t {
  DownlinkSend = 0,
  DownlinkArrive = 1,
  AdvertiserTx = 2,
  ExcitationStart = 3,
  BackscatterEmit = 4,
  ReceiverDecode = 5,
};

const char* event_kind_name(EventKind kind);

// Deterministic discrete-event queue. Events run in nondecreasing time;
// ties break by kind, then by insertion order.
class EventQueue {
 public:
  void at(uint64_t time_us, EventKind kind, std::function<void()> fn);
  void run_all();
  uint64_t now() const { return now_; }
  uint64_t processed() const { return processed_; }

 private:
  struct Entry {
    uint64_t time_us;
    EventKind kind;
    uint64_t seq;
    std::function<void()> fn;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.time_us != b.time_us) return a.time_us > b.time_us;
      if (a.kind != b.kind) return a.kind > b.kind;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
  uint64_t now_ = 0;
  uint64_t next_seq_ = 0;
  uint64_t processed_ = 0;
};

}  // namespace channeldance::sim
