#include "channeldance/events.hpp"

#include <stdexcept>

namespace channeldance::sim {

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::DownlinkSend: return "downlink-send";
    case EventKind::DownlinkArrive: return "downlink-arrive";
    case EventKind::AdvertiserTx: return "advertiser-tx";
    case EventKind::ExcitationStart: return "excitation-start";
    case EventKind::BackscatterEmit: return "backscatter-emit";
    case EventKind::ReceiverDecode: return "receiver-decode";
  }
  return "unknown";
}

void EventQueue::at(uint64_t time_us, EventKind kind, std::function<void()> fn) {
  if (time_us < now_) throw std::logic_error("event scheduled in the past");
  queue_.push(Entry{time_us, kind, next_seq_++, std::move(fn)});
}

void EventQueue::run_all() {
  while (!queue_.empty()) {
    // Move out of the const top; the pop invalidates it either way.
    Entry e = std::move(const_cast<Entry&>(queue_.top()));
    queue_.pop();
    now_ = e.time_us;
    ++processed_;
    e.fn();
  }
}

}  // namespace channeldance::sim
