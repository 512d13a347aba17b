#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "h3lab/engine/attack_event.hpp"

namespace h3lab::capture {

enum class L4 { tcp, udp };

std::string_view to_string(L4 l4) noexcept;

/// One IP packet as seen on the wire.
struct PacketRecord {
  double ts = 0.0;
  std::string src;
  std::string dst;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  L4 l4 = L4::udp;
  /// Frame length in bytes (Ethernet header included).
  std::size_t length = 0;
  /// Cleartext-visible protocol fields keyed by dissector name; multi-valued
  /// fields are comma-separated.
  std::map<std::string, std::string> fields;

  friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

inline constexpr std::size_t kEthernetHeader = 14;
inline constexpr std::size_t kIpv4Header = 20;
inline constexpr std::size_t kUdpHeader = 8;

/// The packet an event puts on the wire, with frame.len, ip.len and
/// udp.length derived from the L4 payload size.
PacketRecord record_from_event(const engine::AttackEvent& event);
std::vector<PacketRecord> records_from_events(const std::vector<engine::AttackEvent>& events);

}  // namespace h3lab::capture
