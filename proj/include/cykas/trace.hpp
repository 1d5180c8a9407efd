#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cykas/message.hpp"

namespace cykas {

// Canonical per-transition trace line:
//   pid | action | kind src->dst | unack | mode [| extra]
//
// `action` is one of app-send / deliver / recv-ack / recv-yct; for app-send
// the kind column shows the application intent as "APP src->dst". The unack
// and mode columns render the acting process's state after the transition.
struct TraceStep {
  ProcessId actor = 0;
  bool is_app_send = false;
  WireMessage wire;  // delivered message, or the APP intent for app-send
  std::string unack_col;
  std::string mode_col;
  std::string extra;

  std::string action_name() const {
    if (is_app_send) return "app-send";
    switch (wire.kind) {
      case MsgKind::Ack: return "recv-ack";
      case MsgKind::Yct: return "recv-yct";
      default: return "deliver";
    }
  }

  std::string kind_col() const {
    if (is_app_send)
      return "APP " + std::to_string(wire.src) + "->" + std::to_string(wire.dst);
    return wire.describe();
  }

  std::string render() const {
    std::string line = "p" + std::to_string(actor) + " | " + action_name() + " | " + kind_col() +
                       " | " + unack_col + " | " + mode_col;
    if (!extra.empty()) line += " | " + extra;
    return line;
  }
};

// Machine-readable action, the unit stored in trace files.
//   A <pid>                          scripted app-send by pid
//   D <kind> <src> <dst> [<sender> <seq>]   delivery of an in-flight message
struct TraceAction {
  bool is_app_send = false;
  ProcessId pid = 0;      // app-send only
  MsgKind kind = MsgKind::NormalSend;
  ProcessId src = 0, dst = 0;
  ProcessId payload_sender = 0;
  std::uint32_t payload_seq = 0;

  std::string serialize() const {
    if (is_app_send) return "A " + std::to_string(pid);
    std::string s = std::string("D ") + msg_kind_name(kind) + " " + std::to_string(src) + " " +
                    std::to_string(dst);
    if (kind == MsgKind::NormalSend || kind == MsgKind::EagerSend)
      s += " " + std::to_string(payload_sender) + " " + std::to_string(payload_seq);
    return s;
  }

  static TraceAction parse(const std::string& line) {
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    TraceAction a;
    if (tag == "A") {
      a.is_app_send = true;
      if (!(is >> a.pid)) throw std::invalid_argument("trace: bad app-send line: " + line);
      return a;
    }
    if (tag != "D") throw std::invalid_argument("trace: bad action line: " + line);
    std::string kind;
    if (!(is >> kind >> a.src >> a.dst))
      throw std::invalid_argument("trace: bad deliver line: " + line);
    if (kind == "NS") a.kind = MsgKind::NormalSend;
    else if (kind == "ES") a.kind = MsgKind::EagerSend;
    else if (kind == "ACK") a.kind = MsgKind::Ack;
    else if (kind == "YCT") a.kind = MsgKind::Yct;
    else throw std::invalid_argument("trace: bad message kind: " + kind);
    if (a.kind == MsgKind::NormalSend || a.kind == MsgKind::EagerSend) {
      if (!(is >> a.payload_sender >> a.payload_seq))
        throw std::invalid_argument("trace: deliver line missing payload id: " + line);
    }
    return a;
  }
};

struct TraceFile {
  std::string protocol;
  std::uint32_t actors = 0;
  std::vector<std::vector<ProcessId>> script;
  std::vector<TraceAction> actions;
};

inline void write_trace_file(std::ostream& os, const TraceFile& t) {
  os << "# cykas trace v1\n";
  os << "protocol=" << t.protocol << "\n";
  os << "actors=" << t.actors << "\n";
  os << "script=";
  for (std::size_t p = 0; p < t.script.size(); ++p) {
    if (p) os << ';';
    for (std::size_t k = 0; k < t.script[p].size(); ++k) {
      if (k) os << ',';
      os << t.script[p][k];
    }
  }
  os << "\n";
  for (const auto& a : t.actions) os << a.serialize() << "\n";
}

inline TraceFile read_trace_file(std::istream& is) {
  TraceFile t;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq != std::string::npos) {
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      if (key == "protocol") {
        t.protocol = value;
      } else if (key == "actors") {
        t.actors = static_cast<std::uint32_t>(std::stoul(value));
      } else if (key == "script") {
        std::istringstream ps(value);
        std::string proc;
        while (std::getline(ps, proc, ';')) {
          std::vector<ProcessId> dsts;
          std::istringstream ds(proc);
          std::string d;
          while (std::getline(ds, d, ','))
            if (!d.empty()) dsts.push_back(static_cast<ProcessId>(std::stoul(d)));
          t.script.push_back(std::move(dsts));
        }
      } else {
        throw std::invalid_argument("trace line " + std::to_string(lineno) + ": unknown key '" +
                                    key + "'");
      }
      continue;
    }
    t.actions.push_back(TraceAction::parse(line));
  }
  if (t.actors == 0 || t.script.size() != t.actors)
    throw std::invalid_argument("trace: missing or inconsistent actors/script header");
  return t;
}

}  // namespace cykas
