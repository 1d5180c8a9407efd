#pragma once

#include <optional>
#include <utility>

#include "cykas/cykas_process.hpp"

namespace cykas {

// The rejected "secret-mode sends" Cykas variant: a process in secret mode
// may still send to the sender of its most recently delivered EagerSend.
// Kept as a separate protocol because bounded exploration must reproduce
// its causal-delivery violation.
struct BuggyCykasState {
  CykasState core;
  std::optional<ProcessId> allowed_recipient;  // set iff core.mode > 0
};

using BuggyOutput = TransitionOutput<BuggyCykasState>;

inline BuggyCykasState buggy_init(ProcessId id, std::uint32_t n) {
  return BuggyCykasState{cykas_init(id, n), std::nullopt};
}

namespace detail {

inline void buggy_try_send_message(BuggyCykasState& s, std::vector<WireMessage>& emissions) {
  CykasState& core = s.core;
  while (!core.ob.empty()) {
    const ProcessId j = core.ob.front().receiver;
    if (core.mode > 0 && j != s.allowed_recipient) return;
    if (core.unack.test(j)) return;
    send_head(core, emissions);
  }
}

}  // namespace detail

inline BuggyOutput buggy_application_send(BuggyCykasState s, const Payload& m) {
  if (m.sender != s.core.id) throw std::invalid_argument("buggy_application_send: sender mismatch");
  if (m.receiver == s.core.id)
    throw std::invalid_argument("buggy_application_send: self-send rejected");
  if (m.receiver >= s.core.n)
    throw std::invalid_argument("buggy_application_send: receiver out of range");
  BuggyOutput out{std::move(s), {}, {}};
  out.state.core.ob.push_back(m);
  detail::buggy_try_send_message(out.state, out.emissions);
  return out;
}

inline BuggyOutput buggy_try_send_message(BuggyCykasState s) {
  BuggyOutput out{std::move(s), {}, {}};
  detail::buggy_try_send_message(out.state, out.emissions);
  return out;
}

inline BuggyOutput buggy_receive_deliver(BuggyCykasState s, const WireMessage& msg) {
  detail::check_data_dst(s.core, msg);
  BuggyOutput out{std::move(s), {}, {}};
  if (msg.kind == MsgKind::EagerSend) {
    out.state.core.mode += 1;
    out.state.allowed_recipient = msg.src;  // most recently delivered eager sender
  }
  out.deliveries.push_back(msg.payload);
  out.emissions.push_back(WireMessage::ack(out.state.core.id, msg.src));
  return out;
}

inline BuggyOutput buggy_receive_ack(BuggyCykasState s, ProcessId from) {
  if (from >= s.core.n || !s.core.unack.test(from))
    throw ProtocolViolation("buggy_receive_ack: no outstanding message to p" + std::to_string(from));
  BuggyOutput out{std::move(s), {}, {}};
  CykasState& core = out.state.core;
  core.unack.reset(from);
  std::vector<ProcessId> receivers;
  receivers.reserve(core.eager_sent.size());
  for (auto& [receiver, queue] : core.eager_sent) {
    for (auto& bv : queue) bv.reset(from);
    receivers.push_back(receiver);
  }
  for (ProcessId r : receivers) detail::try_send_yct(core, r, out.emissions);
  detail::buggy_try_send_message(out.state, out.emissions);
  return out;
}

inline BuggyOutput buggy_receive_yct(BuggyCykasState s) {
  if (s.core.mode == 0) throw ProtocolViolation("buggy_receive_yct: not in secret mode");
  BuggyOutput out{std::move(s), {}, {}};
  out.state.core.mode -= 1;
  if (out.state.core.mode == 0) out.state.allowed_recipient.reset();
  detail::buggy_try_send_message(out.state, out.emissions);
  return out;
}

inline void encode_state(const BuggyCykasState& s, ByteSink& sink) {
  encode_state(s.core, sink);
  sink.put_u8_checked(s.allowed_recipient ? *s.allowed_recipient + 1 : 0);
}

inline BuggyCykasState decode_state_buggy(ByteReader& in, ProcessId id, std::uint32_t n) {
  BuggyCykasState s;
  s.core = decode_state_cykas(in, id, n);
  const std::uint8_t a = in.get_u8();
  if (a != 0) s.allowed_recipient = a - 1;
  return s;
}

}  // namespace cykas
