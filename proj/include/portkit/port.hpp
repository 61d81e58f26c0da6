#pragma once

#include <cstdint>
#include <string>
#include <tuple>

#include "portkit/value.hpp"

namespace portkit {

enum class PortDirection { In, Out };

inline const char* to_string(PortDirection d) {
  return d == PortDirection::In ? "in" : "out";
}

/// Names one endpoint of a module: (module, port, direction).
struct PortId {
  std::string module;
  std::string port;
  PortDirection direction = PortDirection::Out;

  std::string display() const { return module + "." + port; }

  bool operator==(const PortId& o) const {
    return module == o.module && port == o.port && direction == o.direction;
  }
  bool operator<(const PortId& o) const {
    return std::tie(module, port, direction) <
           std::tie(o.module, o.port, o.direction);
  }
};

/// Opaque connection identity plus the display label used in traces and
/// constraint tables (e.g. "C1").
struct ConnectionId {
  std::uint64_t id = 0;
  std::string label;

  bool operator==(const ConnectionId& o) const { return id == o.id; }
};

/// One unit of traffic on a connection. Immutable after construction.
struct Message {
  Value payload;
  ConnectionId source;
  double stamp = 0;  // seconds of virtual time at write
};

}  // namespace portkit
