#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "cykas/bytes.hpp"

namespace cykas {

using ProcessId = std::uint32_t;

enum class MsgKind : std::uint8_t { NormalSend = 0, EagerSend = 1, Ack = 2, Yct = 3 };

inline const char* msg_kind_name(MsgKind k) {
  switch (k) {
    case MsgKind::NormalSend: return "NS";
    case MsgKind::EagerSend: return "ES";
    case MsgKind::Ack: return "ACK";
    case MsgKind::Yct: return "YCT";
  }
  return "?";
}

// Application payload. Identity within one execution is (sender, seq);
// size_bytes and job_ms only matter to the network simulator and are
// excluded from comparisons and canonical encodings.
struct Payload {
  ProcessId sender = 0;
  ProcessId receiver = 0;
  std::uint32_t seq = 0;
  std::uint32_t size_bytes = 64;
  double job_ms = -1.0;  // < 0: delivery triggers no job

  bool triggers_job() const { return job_ms >= 0.0; }

  friend bool operator==(const Payload& a, const Payload& b) {
    return a.sender == b.sender && a.seq == b.seq && a.receiver == b.receiver;
  }
  friend std::strong_ordering operator<=>(const Payload& a, const Payload& b) {
    return std::tie(a.sender, a.seq, a.receiver) <=> std::tie(b.sender, b.seq, b.receiver);
  }
};

// One protocol message on the wire. Ack and Yct carry no payload.
struct WireMessage {
  MsgKind kind = MsgKind::NormalSend;
  ProcessId src = 0;
  ProcessId dst = 0;
  Payload payload;  // valid iff is_data()

  bool is_data() const { return kind == MsgKind::NormalSend || kind == MsgKind::EagerSend; }

  static WireMessage normal(const Payload& p) {
    return {MsgKind::NormalSend, p.sender, p.receiver, p};
  }
  static WireMessage eager(const Payload& p) {
    return {MsgKind::EagerSend, p.sender, p.receiver, p};
  }
  static WireMessage ack(ProcessId src, ProcessId dst) { return {MsgKind::Ack, src, dst, {}}; }
  static WireMessage yct(ProcessId src, ProcessId dst) { return {MsgKind::Yct, src, dst, {}}; }

  friend bool operator==(const WireMessage& a, const WireMessage& b) {
    if (a.kind != b.kind || a.src != b.src || a.dst != b.dst) return false;
    return !a.is_data() || a.payload == b.payload;
  }
  friend std::strong_ordering operator<=>(const WireMessage& a, const WireMessage& b) {
    if (auto c = std::tie(a.kind, a.src, a.dst) <=> std::tie(b.kind, b.src, b.dst); c != 0)
      return c;
    if (!a.is_data()) return std::strong_ordering::equal;
    return a.payload <=> b.payload;
  }

  void encode(ByteSink& sink) const {
    sink.put_u8(static_cast<std::uint8_t>(kind));
    sink.put_u8_checked(src);
    sink.put_u8_checked(dst);
    if (is_data()) {
      sink.put_u8_checked(payload.sender);
      sink.put_u8_checked(payload.receiver);
      sink.put_u8_checked(payload.seq);
    }
  }

  static WireMessage decode(ByteReader& in) {
    WireMessage m;
    m.kind = static_cast<MsgKind>(in.get_u8());
    m.src = in.get_u8();
    m.dst = in.get_u8();
    if (m.is_data()) {
      m.payload.sender = in.get_u8();
      m.payload.receiver = in.get_u8();
      m.payload.seq = in.get_u8();
    }
    return m;
  }

  std::string describe() const {
    return std::string(msg_kind_name(kind)) + " " + std::to_string(src) + "->" +
           std::to_string(dst);
  }
};

// Pure transition result: successor state plus side effects in the exact
// order the protocol produced them.
template <class State, class Wire = WireMessage>
struct TransitionOutput {
  State state;
  std::vector<Wire> emissions;
  std::vector<Payload> deliveries;
};

// Raised when a received control message contradicts protocol state
// (e.g. an ACK for a recipient with no outstanding message).
struct ProtocolViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace cykas
