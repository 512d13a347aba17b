#include "h3lab/wire/encapsulation.hpp"

#include <string>

#include "h3lab/common/error.hpp"

namespace h3lab::wire {

namespace {

void put16(std::vector<std::uint8_t>& out, std::size_t at, std::uint16_t v) {
  out[at] = static_cast<std::uint8_t>(v >> 8);
  out[at + 1] = static_cast<std::uint8_t>(v & 0xff);
}

void put32(std::vector<std::uint8_t>& out, std::size_t at, std::uint32_t v) {
  put16(out, at, static_cast<std::uint16_t>(v >> 16));
  put16(out, at + 2, static_cast<std::uint16_t>(v & 0xffff));
}

std::uint32_t pseudo_header_sum(const InnerEncapsulation& enc, std::uint8_t proto,
                                std::size_t l4_len) {
  const std::uint32_t src = enc.src_addr.to_uint();
  const std::uint32_t dst = enc.dst_addr.to_uint();
  return (src >> 16) + (src & 0xffff) + (dst >> 16) + (dst & 0xffff) + proto +
         static_cast<std::uint32_t>(l4_len);
}

constexpr std::uint8_t kProtoTcp = 6;
constexpr std::uint8_t kProtoUdp = 17;

}  // namespace

std::uint16_t internet_checksum(std::span<const std::uint8_t> bytes,
                                std::uint32_t initial) noexcept {
  std::uint64_t sum = initial;
  std::size_t i = 0;
  for (; i + 1 < bytes.size(); i += 2) sum += (std::uint32_t{bytes[i]} << 8) | bytes[i + 1];
  if (i < bytes.size()) sum += std::uint32_t{bytes[i]} << 8;
  while (sum >> 16) sum = (sum & 0xffff) + (sum >> 16);
  return static_cast<std::uint16_t>(~sum & 0xffff);
}

std::vector<std::uint8_t> build_inner_encapsulation(const InnerEncapsulation& enc) {
  const bool tcp = enc.transport == InnerTransport::tcp;
  const std::size_t l4_header = tcp ? kTcpHeaderLen : kUdpHeaderLen;
  const std::size_t l4_len = l4_header + enc.payload.size();
  const std::size_t total = kIpv4HeaderLen + l4_len;
  if (total > 0xffff) {
    throw SizeError("inner packet of " + std::to_string(total) + " bytes exceeds 65535");
  }

  std::vector<std::uint8_t> out(total, 0);
  const std::uint8_t proto = tcp ? kProtoTcp : kProtoUdp;

  out[0] = 0x45;  // version 4, IHL 5
  put16(out, 2, static_cast<std::uint16_t>(total));
  put16(out, 4, enc.ip_id);
  put16(out, 6, 0x4000);  // DF
  out[8] = 64;
  out[9] = proto;
  for (std::size_t i = 0; i < 4; ++i) {
    out[12 + i] = enc.src_addr.octets[i];
    out[16 + i] = enc.dst_addr.octets[i];
  }
  put16(out, 10, internet_checksum(std::span(out).first(kIpv4HeaderLen)));

  const std::size_t l4 = kIpv4HeaderLen;
  put16(out, l4, enc.src_port);
  put16(out, l4 + 2, enc.dst_port);
  std::copy(enc.payload.begin(), enc.payload.end(), out.begin() + l4 + l4_header);

  std::size_t checksum_at = 0;
  if (tcp) {
    put32(out, l4 + 4, enc.tcp_seq);
    out[l4 + 12] = 0x50;  // data offset 5
    out[l4 + 13] = enc.payload.empty() ? 0x02 : 0x18;
    put16(out, l4 + 14, 64240);
    checksum_at = l4 + 16;
  } else {
    put16(out, l4 + 4, static_cast<std::uint16_t>(l4_len));
    checksum_at = l4 + 6;
  }
  std::uint16_t l4_sum = internet_checksum(std::span(out).subspan(l4),
                                           pseudo_header_sum(enc, proto, l4_len));
  if (!tcp && l4_sum == 0) l4_sum = 0xffff;  // zero means "no checksum" for UDP
  put16(out, checksum_at, l4_sum);
  return out;
}

}  // namespace h3lab::wire
