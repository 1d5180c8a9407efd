#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cykas/bytes.hpp"
#include "cykas/message.hpp"

namespace cykas {

/// Off-band vector clock. Comparison is componentwise; `vc_lt` is the
/// strict order that characterizes happens-before between send events.
struct VectorClock {
  std::vector<std::uint32_t> entries;

  VectorClock() = default;
  explicit VectorClock(std::uint32_t n) : entries(n, 0) {}

  void merge_max(const VectorClock& other) {
    for (std::size_t i = 0; i < entries.size(); ++i)
      entries[i] = std::max(entries[i], other.entries[i]);
  }

  friend bool operator==(const VectorClock&, const VectorClock&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i) os << ',';
      os << entries[i];
    }
    os << ']';
    return os.str();
  }
};

inline bool vc_leq(const VectorClock& a, const VectorClock& b) {
  if (a.entries.size() != b.entries.size())
    throw std::invalid_argument("vector clock length mismatch");
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    if (a.entries[i] > b.entries[i]) return false;
  return true;
}

inline bool vc_lt(const VectorClock& a, const VectorClock& b) {
  return vc_leq(a, b) && a != b;
}

struct MsgId {
  ProcessId sender = 0;
  std::uint32_t seq = 0;

  friend bool operator==(const MsgId&, const MsgId&) = default;
  friend std::strong_ordering operator<=>(const MsgId&, const MsgId&) = default;

  std::string to_string() const {
    return "m" + std::to_string(sender) + "." + std::to_string(seq);
  }
};

inline MsgId msg_id(const Payload& p) { return MsgId{p.sender, p.seq}; }

struct CausalViolation {
  ProcessId process = 0;
  MsgId earlier_id;  // causally earlier, delivered later
  MsgId later_id;    // causally later, delivered first
  VectorClock earlier_vc;
  VectorClock later_vc;

  std::string render() const {
    return "CAUSAL VIOLATION at p" + std::to_string(process) + ": delivered " +
           later_id.to_string() + " before " + earlier_id.to_string() + "; VC " +
           earlier_vc.to_string() + " < VC " + later_vc.to_string();
  }
};

struct LivenessViolation {
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;

  std::string render() const {
    return "LIVENESS VIOLATION: " + std::to_string(sent) + " application-sent but " +
           std::to_string(delivered) + " delivered at a terminal state";
  }
};

/// Delivery history consumed by the causality checker: per-process clocks,
/// per-process delivery logs (application messages only), and the stamps of
/// sent-but-undelivered messages so deliveries can be recorded later.
struct ExecutionHistory {
  struct DeliveryRecord {
    MsgId id;
    VectorClock stamp;
  };

  std::uint32_t n = 0;
  std::vector<VectorClock> clocks;
  std::vector<std::vector<DeliveryRecord>> logs;
  std::map<MsgId, VectorClock> pending;  // recorded sends awaiting delivery
  std::uint64_t sent_count = 0;
  std::uint64_t delivered_count = 0;

  ExecutionHistory() = default;
  explicit ExecutionHistory(std::uint32_t n_)
      : n(n_), clocks(n_, VectorClock(n_)), logs(n_) {}
};

/// Stamp a fresh send: bump the sender's own entry and associate the
/// resulting clock with the message.
inline VectorClock record_send(ExecutionHistory& h, ProcessId sender, MsgId id) {
  if (sender >= h.n) throw std::invalid_argument("record_send: sender out of range");
  if (h.pending.count(id)) throw std::invalid_argument("record_send: duplicate " + id.to_string());
  for (const auto& log : h.logs)
    for (const auto& rec : log)
      if (rec.id == id) throw std::invalid_argument("record_send: duplicate " + id.to_string());
  h.clocks[sender].entries[sender] += 1;
  h.pending.emplace(id, h.clocks[sender]);
  h.sent_count += 1;
  return h.clocks[sender];
}

/// Append to the receiver's delivery log and merge the stamp into its clock.
inline void record_delivery(ExecutionHistory& h, ProcessId receiver, MsgId id,
                            const VectorClock& stamp) {
  if (receiver >= h.n) throw std::invalid_argument("record_delivery: receiver out of range");
  auto it = h.pending.find(id);
  if (it == h.pending.end())
    throw std::invalid_argument("record_delivery: unknown message " + id.to_string());
  h.clocks[receiver].merge_max(stamp);
  h.logs[receiver].push_back({id, stamp});
  h.delivered_count += 1;
  h.pending.erase(it);
}

inline VectorClock stamp_of(const ExecutionHistory& h, MsgId id) {
  auto it = h.pending.find(id);
  if (it == h.pending.end())
    throw std::invalid_argument("stamp_of: unknown message " + id.to_string());
  return it->second;
}

/// Incremental check: compares only the newest entry of `process`'s log
/// against its predecessors. Sound when run after every delivery.
inline std::optional<CausalViolation> check_causal_newest(const ExecutionHistory& h,
                                                          ProcessId process) {
  const auto& log = h.logs[process];
  if (log.empty()) return std::nullopt;
  const auto& newest = log.back();
  for (std::size_t i = 0; i + 1 < log.size(); ++i) {
    if (vc_lt(newest.stamp, log[i].stamp))
      return CausalViolation{process, newest.id, log[i].id, newest.stamp, log[i].stamp};
  }
  return std::nullopt;
}

/// Full scan over every process log; the witness is the first out-of-order
/// pair in log order.
inline std::optional<CausalViolation> check_causal(const ExecutionHistory& h) {
  for (ProcessId p = 0; p < h.n; ++p) {
    const auto& log = h.logs[p];
    for (std::size_t j = 1; j < log.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (vc_lt(log[j].stamp, log[i].stamp))
          return CausalViolation{p, log[j].id, log[i].id, log[j].stamp, log[i].stamp};
  }
  return std::nullopt;
}

/// Terminal-state check only: every application-sent message was delivered.
inline std::optional<LivenessViolation> check_liveness(const ExecutionHistory& h) {
  if (h.delivered_count == h.sent_count) return std::nullopt;
  return LivenessViolation{h.sent_count, h.delivered_count};
}

inline void encode_history(const ExecutionHistory& h, ByteSink& sink) {
  for (ProcessId p = 0; p < h.n; ++p) {
    const auto& log = h.logs[p];
    sink.put_u8_checked(log.size());
    for (const auto& rec : log) {
      sink.put_u8_checked(rec.id.sender);
      sink.put_u8_checked(rec.id.seq);
      for (auto e : rec.stamp.entries) sink.put_u8_checked(e);
    }
  }
  sink.put_u8_checked(h.pending.size());
  for (const auto& [id, stamp] : h.pending) {
    sink.put_u8_checked(id.sender);
    sink.put_u8_checked(id.seq);
    for (auto e : stamp.entries) sink.put_u8_checked(e);
  }
}

inline ExecutionHistory decode_history(ByteReader& in, std::uint32_t n) {
  ExecutionHistory h(n);
  auto read_vc = [&] {
    VectorClock vc(n);
    for (auto& e : vc.entries) e = in.get_u8();
    return vc;
  };
  for (ProcessId p = 0; p < n; ++p) {
    const std::uint8_t len = in.get_u8();
    for (std::uint8_t k = 0; k < len; ++k) {
      MsgId id{in.get_u8(), in.get_u8()};
      h.logs[p].push_back({id, read_vc()});
    }
  }
  const std::uint8_t pend = in.get_u8();
  for (std::uint8_t k = 0; k < pend; ++k) {
    MsgId id{in.get_u8(), in.get_u8()};
    h.pending.emplace(id, read_vc());
  }
  // Clocks and counters are derived from logs and pending entries.
  for (ProcessId p = 0; p < n; ++p) {
    for (const auto& rec : h.logs[p]) {
      h.clocks[p].merge_max(rec.stamp);
      h.clocks[rec.id.sender].entries[rec.id.sender] =
          std::max(h.clocks[rec.id.sender].entries[rec.id.sender], rec.stamp.entries[rec.id.sender]);
      h.delivered_count += 1;
    }
  }
  for (const auto& [id, stamp] : h.pending)
    h.clocks[id.sender].entries[id.sender] =
        std::max(h.clocks[id.sender].entries[id.sender], stamp.entries[id.sender]);
  h.sent_count = h.delivered_count + h.pending.size();
  return h;
}

}  // namespace cykas
