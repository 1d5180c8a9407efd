#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "cykas/bytes.hpp"
#include "cykas/message.hpp"

namespace cykas {

// Mattern-Fünfrocken sender-side baseline: one un-ACKed data message
// outstanding per process, FIFO output buffer, deliver on receipt.
struct MfssState {
  ProcessId id = 0;
  std::uint32_t n = 0;
  std::vector<Payload> ob;
  bool awaiting_ack = false;
};

using MfssOutput = TransitionOutput<MfssState>;

inline MfssState mfss_init(ProcessId id, std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("mfss_init: n must be >= 1");
  if (id >= n) throw std::invalid_argument("mfss_init: id out of range");
  return MfssState{id, n, {}, false};
}

inline MfssOutput mfss_application_send(MfssState s, const Payload& m) {
  if (m.sender != s.id) throw std::invalid_argument("mfss_application_send: sender mismatch");
  if (m.receiver == s.id) throw std::invalid_argument("mfss_application_send: self-send rejected");
  if (m.receiver >= s.n) throw std::invalid_argument("mfss_application_send: receiver out of range");
  MfssOutput out{std::move(s), {}, {}};
  out.state.ob.push_back(m);
  if (!out.state.awaiting_ack) {
    out.emissions.push_back(WireMessage::normal(out.state.ob.front()));
    out.state.ob.erase(out.state.ob.begin());
    out.state.awaiting_ack = true;
  }
  return out;
}

inline MfssOutput mfss_handle(MfssState s, const WireMessage& msg) {
  if (msg.dst != s.id) throw std::invalid_argument("mfss_handle: message not addressed here");
  MfssOutput out{std::move(s), {}, {}};
  MfssState& st = out.state;
  if (msg.kind == MsgKind::NormalSend) {
    out.deliveries.push_back(msg.payload);
    out.emissions.push_back(WireMessage::ack(st.id, msg.src));
  } else if (msg.kind == MsgKind::Ack) {
    if (!st.awaiting_ack) throw ProtocolViolation("mfss_handle: unexpected ACK");
    st.awaiting_ack = false;
    if (!st.ob.empty()) {
      out.emissions.push_back(WireMessage::normal(st.ob.front()));
      st.ob.erase(st.ob.begin());
      st.awaiting_ack = true;
    }
  } else {
    throw std::invalid_argument("mfss_handle: unsupported message kind");
  }
  return out;
}

inline void encode_state(const MfssState& s, ByteSink& sink) {
  sink.put_u8_checked(s.ob.size());
  for (const auto& m : s.ob) {
    sink.put_u8_checked(m.receiver);
    sink.put_u8_checked(m.seq);
  }
  sink.put_u8(s.awaiting_ack ? 1 : 0);
}

inline MfssState decode_state_mfss(ByteReader& in, ProcessId id, std::uint32_t n) {
  MfssState s = mfss_init(id, n);
  const std::uint8_t ob_len = in.get_u8();
  for (std::uint8_t i = 0; i < ob_len; ++i) {
    Payload p;
    p.sender = id;
    p.receiver = in.get_u8();
    p.seq = in.get_u8();
    s.ob.push_back(p);
  }
  s.awaiting_ack = in.get_u8() != 0;
  return s;
}

}  // namespace cykas
