#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cykas/bytes.hpp"
#include "cykas/message.hpp"

namespace cykas {

// n x n send-count matrix; entry (i, j) counts messages i -> j known to the
// holder.
struct MatrixClock {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> cells;

  MatrixClock() = default;
  explicit MatrixClock(std::uint32_t n_) : n(n_), cells(std::size_t(n_) * n_, 0) {}

  std::uint32_t& at(std::uint32_t i, std::uint32_t j) { return cells[std::size_t(i) * n + j]; }
  std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return cells[std::size_t(i) * n + j]; }

  void merge_max(const MatrixClock& other) {
    for (std::size_t k = 0; k < cells.size(); ++k) cells[k] = std::max(cells[k], other.cells[k]);
  }

  friend bool operator==(const MatrixClock&, const MatrixClock&) = default;
  friend std::strong_ordering operator<=>(const MatrixClock& a, const MatrixClock& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    return a.cells <=> b.cells;
  }

  void encode(ByteSink& sink) const {
    for (auto c : cells) sink.put_u8_checked(c);
  }

  static MatrixClock decode(ByteReader& in, std::uint32_t n) {
    MatrixClock m(n);
    for (auto& c : m.cells) c = in.get_u8();
    return m;
  }

  // "[0->2]=1 [1->2]=3": nonzero entries only, for trace output.
  std::string nonzero_summary() const {
    std::ostringstream os;
    bool first = true;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (at(i, j) != 0) {
          if (!first) os << ' ';
          os << '[' << i << "->" << j << "]=" << at(i, j);
          first = false;
        }
    return first ? std::string("-") : os.str();
  }
};

// Data message plus the sender's matrix stamp.
struct StampedMessage {
  WireMessage msg;
  MatrixClock stamp;

  friend bool operator==(const StampedMessage&, const StampedMessage&) = default;
  friend std::strong_ordering operator<=>(const StampedMessage& a, const StampedMessage& b) {
    if (auto c = a.msg <=> b.msg; c != 0) return c;
    return a.stamp <=> b.stamp;
  }
};

// Receiver-side matrix-clock protocol state. `pending` holds arrived
// messages whose stamps are not yet satisfied, kept sorted for canonical
// encoding.
struct MatrixState {
  ProcessId id = 0;
  std::uint32_t n = 0;
  MatrixClock sent;
  std::vector<std::uint32_t> delivered;
  std::vector<StampedMessage> pending;
};

using MatrixOutput = TransitionOutput<MatrixState, StampedMessage>;

inline MatrixState matrix_init(ProcessId id, std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("matrix_init: n must be >= 1");
  if (id >= n) throw std::invalid_argument("matrix_init: id out of range");
  MatrixState s;
  s.id = id;
  s.n = n;
  s.sent = MatrixClock(n);
  s.delivered.assign(n, 0);
  return s;
}

/// Stamp with the pre-increment send matrix and emit; never blocks.
inline MatrixOutput matrix_send(MatrixState s, const Payload& m) {
  if (m.sender != s.id) throw std::invalid_argument("matrix_send: sender mismatch");
  if (m.receiver == s.id) throw std::invalid_argument("matrix_send: self-send rejected");
  if (m.receiver >= s.n) throw std::invalid_argument("matrix_send: receiver out of range");
  MatrixOutput out{std::move(s), {}, {}};
  out.emissions.push_back(StampedMessage{WireMessage::normal(m), out.state.sent});
  out.state.sent.at(out.state.id, m.receiver) += 1;
  return out;
}

/// Standard delivery condition: every send to us recorded in the stamp has
/// already been delivered here.
inline bool matrix_deliverable(const MatrixState& s, const MatrixClock& stamp) {
  for (std::uint32_t k = 0; k < s.n; ++k)
    if (stamp.at(k, s.id) > s.delivered[k]) return false;
  return true;
}

namespace detail {

inline void matrix_deliver_one(MatrixState& s, const StampedMessage& sm,
                               std::vector<Payload>& deliveries) {
  deliveries.push_back(sm.msg.payload);
  s.delivered[sm.msg.src] += 1;
  s.sent.merge_max(sm.stamp);
  s.sent.at(sm.msg.src, s.id) =
      std::max(s.sent.at(sm.msg.src, s.id), sm.stamp.at(sm.msg.src, s.id) + 1);
}

}  // namespace detail

/// Deliver if the stamp allows, then flush any newly deliverable pending
/// messages; otherwise buffer.
inline MatrixOutput matrix_receive(MatrixState s, const StampedMessage& sm) {
  if (sm.msg.dst != s.id) throw std::invalid_argument("matrix_receive: message not addressed here");
  MatrixOutput out{std::move(s), {}, {}};
  MatrixState& st = out.state;
  if (!matrix_deliverable(st, sm.stamp)) {
    st.pending.insert(std::upper_bound(st.pending.begin(), st.pending.end(), sm), sm);
    return out;
  }
  detail::matrix_deliver_one(st, sm, out.deliveries);
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (auto it = st.pending.begin(); it != st.pending.end(); ++it) {
      if (matrix_deliverable(st, it->stamp)) {
        StampedMessage next = *it;
        st.pending.erase(it);
        detail::matrix_deliver_one(st, next, out.deliveries);
        progressed = true;
        break;
      }
    }
  }
  return out;
}

inline void encode_state(const MatrixState& s, ByteSink& sink) {
  s.sent.encode(sink);
  for (auto d : s.delivered) sink.put_u8_checked(d);
  sink.put_u8_checked(s.pending.size());
  for (const auto& sm : s.pending) {
    sm.msg.encode(sink);
    sm.stamp.encode(sink);
  }
}

inline MatrixState decode_state_matrix(ByteReader& in, ProcessId id, std::uint32_t n) {
  MatrixState s = matrix_init(id, n);
  s.sent = MatrixClock::decode(in, n);
  for (auto& d : s.delivered) d = in.get_u8();
  const std::uint8_t k = in.get_u8();
  for (std::uint8_t i = 0; i < k; ++i) {
    StampedMessage sm;
    sm.msg = WireMessage::decode(in);
    sm.stamp = MatrixClock::decode(in, n);
    s.pending.push_back(sm);
  }
  return s;
}

}  // namespace cykas
