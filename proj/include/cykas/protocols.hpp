#pragma once

#include <stdexcept>
#include <string>

#include "cykas/buggy.hpp"
#include "cykas/cykas_process.hpp"
#include "cykas/matrix_clock.hpp"
#include "cykas/message.hpp"
#include "cykas/mfss.hpp"

namespace cykas {

enum class ProtocolKind { Cykas, Mfss, BuggyCykas, Matrix };

inline const char* protocol_name(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::Cykas: return "cykas";
    case ProtocolKind::Mfss: return "mfss";
    case ProtocolKind::BuggyCykas: return "buggy-cykas";
    case ProtocolKind::Matrix: return "matrix";
  }
  return "?";
}

inline ProtocolKind parse_protocol(const std::string& s) {
  if (s == "cykas") return ProtocolKind::Cykas;
  if (s == "mfss") return ProtocolKind::Mfss;
  if (s == "buggy-cykas") return ProtocolKind::BuggyCykas;
  if (s == "matrix") return ProtocolKind::Matrix;
  throw std::invalid_argument("unknown protocol '" + s + "'");
}

// Uniform adapter surface over the four protocol modules, used by the
// model checker, the random-interleaving harness, and the simulator:
//
//   State, Wire      protocol state and wire-message types
//   init(id, n)      initial state
//   app_send(s, m)   client-side send
//   handle(s, w)     receipt of any wire message
//   base(w)          the WireMessage view of a Wire
//   encode/decode    canonical state and wire codecs (fingerprints, replay)
//   unack_col/mode_col/wire_extra   trace-rendering columns

struct CykasProtocol {
  static constexpr ProtocolKind kind = ProtocolKind::Cykas;
  using State = CykasState;
  using Wire = WireMessage;
  using Output = TransitionOutput<State, Wire>;

  static State init(ProcessId id, std::uint32_t n) { return cykas_init(id, n); }
  static Output app_send(State s, const Payload& m) { return application_send(std::move(s), m); }

  static Output handle(State s, const Wire& w) {
    switch (w.kind) {
      case MsgKind::NormalSend:
      case MsgKind::EagerSend: return receive_deliver(std::move(s), w);
      case MsgKind::Ack: return receive_ack(std::move(s), w.src);
      case MsgKind::Yct: return receive_yct(std::move(s));
    }
    throw std::invalid_argument("cykas: bad message kind");
  }

  static const WireMessage& base(const Wire& w) { return w; }
  static void encode(const State& s, ByteSink& sink) { encode_state(s, sink); }
  static State decode(ByteReader& in, ProcessId id, std::uint32_t n) {
    return decode_state_cykas(in, id, n);
  }
  static void encode_wire(const Wire& w, ByteSink& sink) { w.encode(sink); }
  static Wire decode_wire(ByteReader& in, std::uint32_t) { return WireMessage::decode(in); }

  static std::string unack_col(const State& s) { return s.unack.to_string(); }
  static std::string mode_col(const State& s) { return std::to_string(s.mode); }
  static std::string wire_extra(const Wire&) { return {}; }
};

struct MfssProtocol {
  static constexpr ProtocolKind kind = ProtocolKind::Mfss;
  using State = MfssState;
  using Wire = WireMessage;
  using Output = TransitionOutput<State, Wire>;

  static State init(ProcessId id, std::uint32_t n) { return mfss_init(id, n); }
  static Output app_send(State s, const Payload& m) {
    return mfss_application_send(std::move(s), m);
  }
  static Output handle(State s, const Wire& w) { return mfss_handle(std::move(s), w); }

  static const WireMessage& base(const Wire& w) { return w; }
  static void encode(const State& s, ByteSink& sink) { encode_state(s, sink); }
  static State decode(ByteReader& in, ProcessId id, std::uint32_t n) {
    return decode_state_mfss(in, id, n);
  }
  static void encode_wire(const Wire& w, ByteSink& sink) { w.encode(sink); }
  static Wire decode_wire(ByteReader& in, std::uint32_t) { return WireMessage::decode(in); }

  static std::string unack_col(const State& s) { return s.awaiting_ack ? "1" : "0"; }
  static std::string mode_col(const State&) { return "-"; }
  static std::string wire_extra(const Wire&) { return {}; }
};

struct BuggyCykasProtocol {
  static constexpr ProtocolKind kind = ProtocolKind::BuggyCykas;
  using State = BuggyCykasState;
  using Wire = WireMessage;
  using Output = TransitionOutput<State, Wire>;

  static State init(ProcessId id, std::uint32_t n) { return buggy_init(id, n); }
  static Output app_send(State s, const Payload& m) {
    return buggy_application_send(std::move(s), m);
  }

  static Output handle(State s, const Wire& w) {
    switch (w.kind) {
      case MsgKind::NormalSend:
      case MsgKind::EagerSend: return buggy_receive_deliver(std::move(s), w);
      case MsgKind::Ack: return buggy_receive_ack(std::move(s), w.src);
      case MsgKind::Yct: return buggy_receive_yct(std::move(s));
    }
    throw std::invalid_argument("buggy-cykas: bad message kind");
  }

  static const WireMessage& base(const Wire& w) { return w; }
  static void encode(const State& s, ByteSink& sink) { encode_state(s, sink); }
  static State decode(ByteReader& in, ProcessId id, std::uint32_t n) {
    return decode_state_buggy(in, id, n);
  }
  static void encode_wire(const Wire& w, ByteSink& sink) { w.encode(sink); }
  static Wire decode_wire(ByteReader& in, std::uint32_t) { return WireMessage::decode(in); }

  static std::string unack_col(const State& s) { return s.core.unack.to_string(); }
  static std::string mode_col(const State& s) { return std::to_string(s.core.mode); }
  static std::string wire_extra(const Wire&) { return {}; }
};

struct MatrixProtocol {
  static constexpr ProtocolKind kind = ProtocolKind::Matrix;
  using State = MatrixState;
  using Wire = StampedMessage;
  using Output = TransitionOutput<State, Wire>;

  static State init(ProcessId id, std::uint32_t n) { return matrix_init(id, n); }
  static Output app_send(State s, const Payload& m) { return matrix_send(std::move(s), m); }
  static Output handle(State s, const Wire& w) { return matrix_receive(std::move(s), w); }

  static const WireMessage& base(const Wire& w) { return w.msg; }
  static void encode(const State& s, ByteSink& sink) { encode_state(s, sink); }
  static State decode(ByteReader& in, ProcessId id, std::uint32_t n) {
    return decode_state_matrix(in, id, n);
  }
  static void encode_wire(const Wire& w, ByteSink& sink) {
    w.msg.encode(sink);
    w.stamp.encode(sink);
  }
  static Wire decode_wire(ByteReader& in, std::uint32_t n) {
    StampedMessage sm;
    sm.msg = WireMessage::decode(in);
    sm.stamp = MatrixClock::decode(in, n);
    return sm;
  }

  static std::string unack_col(const State&) { return "-"; }
  static std::string mode_col(const State&) { return "-"; }
  static std::string wire_extra(const Wire& w) { return w.stamp.nonzero_summary(); }
};

}  // namespace cykas
