#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cykas/bitvec.hpp"
#include "cykas/bytes.hpp"
#include "cykas/message.hpp"

namespace cykas {

/// Per-process Cykas protocol state.
///
/// ob         FIFO queue of application messages not yet network-sent.
/// unack      unack.test(j) means a data message to j awaits its ACK.
/// mode       number of YCT messages currently awaited; > 0 is secret mode,
///            in which the process emits only ACK and YCT.
/// eager_sent per eager-send recipient, a queue of snapshots of `unack`
///            (taken at eager-send time) gating the matching YCT.
///            Entries with empty queues are erased so that equal protocol
///            situations compare equal.
struct CykasState {
  ProcessId id = 0;
  std::uint32_t n = 0;
  std::vector<Payload> ob;
  Bitvec unack;
  std::uint32_t mode = 0;
  std::map<ProcessId, std::vector<Bitvec>> eager_sent;
};

using CykasOutput = TransitionOutput<CykasState>;

inline CykasState cykas_init(ProcessId id, std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("cykas_init: n must be >= 1");
  if (id >= n) throw std::invalid_argument("cykas_init: id out of range");
  CykasState s;
  s.id = id;
  s.n = n;
  s.unack = Bitvec(n);
  return s;
}

namespace detail {

// Sends the head of `ob` unconditionally: NormalSend when no ACK is
// outstanding anywhere, EagerSend otherwise (snapshotting `unack` before
// marking the new send as outstanding).
inline void send_head(CykasState& s, std::vector<WireMessage>& emissions) {
  const Payload m = s.ob.front();
  const ProcessId j = m.receiver;
  if (s.unack.all_zero()) {
    emissions.push_back(WireMessage::normal(m));
  } else {
    emissions.push_back(WireMessage::eager(m));
    s.eager_sent[j].push_back(s.unack);
  }
  s.ob.erase(s.ob.begin());
  s.unack.set(j);
}

inline void try_send_message(CykasState& s, std::vector<WireMessage>& emissions) {
  if (s.mode > 0) return;  // no send in secret mode
  while (!s.ob.empty()) {
    if (s.unack.test(s.ob.front().receiver)) return;  // head-of-line blocked
    send_head(s, emissions);
  }
}

inline void try_send_yct(CykasState& s, ProcessId receiver, std::vector<WireMessage>& emissions) {
  auto it = s.eager_sent.find(receiver);
  if (it == s.eager_sent.end()) return;
  auto& queue = it->second;
  while (!queue.empty() && queue.front().all_zero() && !s.unack.test(receiver)) {
    emissions.push_back(WireMessage::yct(s.id, receiver));
    queue.erase(queue.begin());
  }
  if (queue.empty()) s.eager_sent.erase(it);
}

inline void check_data_dst(const CykasState& s, const WireMessage& msg) {
  if (!msg.is_data()) throw std::invalid_argument("receive_deliver: expected a data message");
  if (msg.dst != s.id) throw std::invalid_argument("receive_deliver: message not addressed here");
}

}  // namespace detail

/// Queue m and immediately attempt to network-send.
inline CykasOutput application_send(CykasState s, const Payload& m) {
  if (m.sender != s.id) throw std::invalid_argument("application_send: sender mismatch");
  if (m.receiver == s.id) throw std::invalid_argument("application_send: self-send rejected");
  if (m.receiver >= s.n) throw std::invalid_argument("application_send: receiver out of range");
  CykasOutput out{std::move(s), {}, {}};
  out.state.ob.push_back(m);
  detail::try_send_message(out.state, out.emissions);
  return out;
}

/// Drain sendable messages from the head of the output buffer.
inline CykasOutput try_send_message(CykasState s) {
  CykasOutput out{std::move(s), {}, {}};
  detail::try_send_message(out.state, out.emissions);
  return out;
}

/// Receive a NormalSend or EagerSend: deliver the payload and ACK it.
/// An EagerSend additionally raises `mode` (secret mode).
inline CykasOutput receive_deliver(CykasState s, const WireMessage& msg) {
  detail::check_data_dst(s, msg);
  CykasOutput out{std::move(s), {}, {}};
  if (msg.kind == MsgKind::EagerSend) out.state.mode += 1;
  out.deliveries.push_back(msg.payload);
  out.emissions.push_back(WireMessage::ack(out.state.id, msg.src));
  return out;
}

/// Receive the ACK for the one outstanding message to `from`: clear the
/// unack bit everywhere, release any YCTs now unblocked, then retry the
/// output buffer once.
inline CykasOutput receive_ack(CykasState s, ProcessId from) {
  if (from >= s.n || !s.unack.test(from))
    throw ProtocolViolation("receive_ack: no outstanding message to p" + std::to_string(from));
  CykasOutput out{std::move(s), {}, {}};
  CykasState& st = out.state;
  st.unack.reset(from);
  std::vector<ProcessId> receivers;
  receivers.reserve(st.eager_sent.size());
  for (auto& [receiver, queue] : st.eager_sent) {
    for (auto& bv : queue) bv.reset(from);
    receivers.push_back(receiver);
  }
  for (ProcessId r : receivers) detail::try_send_yct(st, r, out.emissions);
  detail::try_send_message(st, out.emissions);
  return out;
}

/// Release YCTs to `receiver` while its queued snapshots are fully ACKed.
inline CykasOutput try_send_yct(CykasState s, ProcessId receiver) {
  CykasOutput out{std::move(s), {}, {}};
  detail::try_send_yct(out.state, receiver, out.emissions);
  return out;
}

/// Receive a YCT: leave one level of secret mode, then retry sending.
inline CykasOutput receive_yct(CykasState s) {
  if (s.mode == 0) throw ProtocolViolation("receive_yct: not in secret mode");
  CykasOutput out{std::move(s), {}, {}};
  out.state.mode -= 1;
  detail::try_send_message(out.state, out.emissions);
  return out;
}

inline void encode_state(const CykasState& s, ByteSink& sink) {
  sink.put_u8_checked(s.ob.size());
  for (const auto& m : s.ob) {
    sink.put_u8_checked(m.receiver);
    sink.put_u8_checked(m.seq);
  }
  s.unack.encode(sink);
  sink.put_u8_checked(s.mode);
  sink.put_u8_checked(s.eager_sent.size());
  for (const auto& [receiver, queue] : s.eager_sent) {
    sink.put_u8_checked(receiver);
    sink.put_u8_checked(queue.size());
    for (const auto& bv : queue) bv.encode(sink);
  }
}

inline CykasState decode_state_cykas(ByteReader& in, ProcessId id, std::uint32_t n) {
  CykasState s = cykas_init(id, n);
  const std::uint8_t ob_len = in.get_u8();
  s.ob.reserve(ob_len);
  for (std::uint8_t i = 0; i < ob_len; ++i) {
    Payload p;
    p.sender = id;
    p.receiver = in.get_u8();
    p.seq = in.get_u8();
    s.ob.push_back(p);
  }
  s.unack = Bitvec::decode(in, n);
  s.mode = in.get_u8();
  const std::uint8_t entries = in.get_u8();
  for (std::uint8_t e = 0; e < entries; ++e) {
    const ProcessId receiver = in.get_u8();
    const std::uint8_t qlen = in.get_u8();
    auto& queue = s.eager_sent[receiver];
    queue.reserve(qlen);
    for (std::uint8_t q = 0; q < qlen; ++q) queue.push_back(Bitvec::decode(in, n));
  }
  return s;
}

}  // namespace cykas
