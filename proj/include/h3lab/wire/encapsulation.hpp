#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "h3lab/common/net.hpp"

namespace h3lab::wire {

enum class InnerTransport { tcp, udp };

/// An inner IPv4 packet meant to ride as the payload of an outer UDP
/// datagram, i.e. the IP(TCP) / IP(UDP) part of IP(UDP(IP(...))). The
/// outer headers come from the host network stack.
struct InnerEncapsulation {
  InnerTransport transport = InnerTransport::tcp;
  Ipv4Address src_addr;
  Ipv4Address dst_addr;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::vector<std::uint8_t> payload;
  std::uint16_t ip_id = 0;
  std::uint32_t tcp_seq = 0;
};

inline constexpr std::size_t kIpv4HeaderLen = 20;
inline constexpr std::size_t kTcpHeaderLen = 20;
inline constexpr std::size_t kUdpHeaderLen = 8;

/// RFC 1071 ones-complement sum over `bytes`, folded and complemented.
std::uint16_t internet_checksum(std::span<const std::uint8_t> bytes,
                                std::uint32_t initial = 0) noexcept;

/// Serializes the inner packet with valid IPv4 header checksum, total
/// length and L4 checksum. TCP segments carry SYN when the payload is
/// empty and PSH|ACK otherwise. Throws SizeError above 65535 bytes.
std::vector<std::uint8_t> build_inner_encapsulation(const InnerEncapsulation& enc);

}  // namespace h3lab::wire
