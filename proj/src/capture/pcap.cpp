#include "h3lab/capture/pcap.hpp"

#include <cmath>
#include <fstream>
#include <iterator>

#include "h3lab/common/error.hpp"
#include "h3lab/common/net.hpp"
#include "h3lab/wire/encapsulation.hpp"

namespace h3lab::capture {

namespace {

constexpr std::uint32_t kMagicMicro = 0xa1b2c3d4;
constexpr std::uint32_t kMagicNano = 0xa1b23c4d;
constexpr std::uint32_t kLinkEthernet = 1;

std::uint32_t read_u32(const std::uint8_t* p, bool swap) {
  const std::uint32_t le = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                           (static_cast<std::uint32_t>(p[2]) << 16) |
                           (static_cast<std::uint32_t>(p[3]) << 24);
  return swap ? __builtin_bswap32(le) : le;
}

std::uint16_t be16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

std::string ip_text(const std::uint8_t* p) {
  return Ipv4Address{{p[0], p[1], p[2], p[3]}}.to_string();
}

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u16be(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

std::size_t field_number(const PacketRecord& r, const std::string& key, std::size_t fallback) {
  auto it = r.fields.find(key);
  if (it == r.fields.end()) return fallback;
  try {
    return static_cast<std::size_t>(std::stoull(it->second));
  } catch (const std::exception&) {
    return fallback;
  }
}

bool flag(const PacketRecord& r, const std::string& key) {
  auto it = r.fields.find(key);
  return it != r.fields.end() && it->second == "1";
}

}  // namespace

IngestResult ingest_pcap(std::istream& in) {
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (data.size() < 24) throw IngestError("pcap: file shorter than its global header");
  bool swap = false;
  bool nano = false;
  const std::uint32_t magic = read_u32(data.data(), false);
  if (magic == kMagicMicro || magic == kMagicNano) {
    nano = magic == kMagicNano;
  } else if (__builtin_bswap32(magic) == kMagicMicro || __builtin_bswap32(magic) == kMagicNano) {
    swap = true;
    nano = __builtin_bswap32(magic) == kMagicNano;
  } else {
    throw IngestError("pcap: bad magic number (pcap-ng is not supported)");
  }
  const std::uint32_t linktype = read_u32(data.data() + 20, swap) & 0x0fffffff;
  if (linktype != kLinkEthernet) {
    throw IngestError("pcap: unsupported link type " + std::to_string(linktype));
  }

  IngestResult result;
  std::size_t pos = 24;
  while (pos < data.size()) {
    if (data.size() - pos < 16) {
      ++result.skipped_truncated;
      break;
    }
    const std::uint8_t* h = data.data() + pos;
    const std::uint32_t sec = read_u32(h, swap);
    const std::uint32_t frac = read_u32(h + 4, swap);
    const std::uint32_t incl = read_u32(h + 8, swap);
    const std::uint32_t orig = read_u32(h + 12, swap);
    pos += 16;
    if (incl > data.size() - pos) {
      ++result.skipped_truncated;
      break;
    }
    const std::uint8_t* f = data.data() + pos;
    pos += incl;

    std::size_t off = kEthernetHeader;
    if (incl < off) {
      ++result.skipped_truncated;
      continue;
    }
    std::uint16_t ethertype = be16(f + 12);
    if (ethertype == 0x8100 && incl >= off + 4) {
      ethertype = be16(f + 16);
      off += 4;
    }
    if (ethertype != 0x0800) {
      ++result.skipped_non_ip;
      continue;
    }
    if (incl < off + kIpv4Header) {
      ++result.skipped_truncated;
      continue;
    }
    const std::uint8_t* ip = f + off;
    if ((ip[0] >> 4) != 4) {
      ++result.skipped_non_ip;
      continue;
    }
    const std::size_t ihl = static_cast<std::size_t>(ip[0] & 0x0f) * 4;
    const std::size_t ip_len = be16(ip + 2);
    const std::uint8_t proto = ip[9];
    if (proto != 6 && proto != 17) {
      ++result.skipped_other;
      continue;
    }
    const std::size_t l4_off = off + ihl;
    const std::size_t l4_min = proto == 6 ? 20 : kUdpHeader;
    if (ihl < kIpv4Header || incl < l4_off + l4_min) {
      ++result.skipped_truncated;
      continue;
    }
    PacketRecord r;
    r.ts = static_cast<double>(sec) + static_cast<double>(frac) / (nano ? 1e9 : 1e6);
    r.src = ip_text(ip + 12);
    r.dst = ip_text(ip + 16);
    r.length = orig;
    r.fields["frame.len"] = std::to_string(orig);
    r.fields["ip.len"] = std::to_string(ip_len);
    const std::uint8_t* l4 = f + l4_off;
    r.src_port = be16(l4);
    r.dst_port = be16(l4 + 2);
    if (proto == 6) {
      r.l4 = L4::tcp;
      const std::size_t hdr = static_cast<std::size_t>(l4[12] >> 4) * 4;
      const std::uint8_t flags = l4[13];
      r.fields["tcp.hdr_len"] = std::to_string(hdr);
      if (hdr > 20) r.fields["tcp.option_len"] = std::to_string(hdr - 20);
      r.fields["tcp.len"] = std::to_string(ip_len >= ihl + hdr ? ip_len - ihl - hdr : 0);
      r.fields["tcp.window_size_value"] = std::to_string(be16(l4 + 14));
      r.fields["tcp.flags.fin"] = (flags & 0x01) ? "1" : "0";
      r.fields["tcp.flags.syn"] = (flags & 0x02) ? "1" : "0";
      r.fields["tcp.flags.reset"] = (flags & 0x04) ? "1" : "0";
      r.fields["tcp.flags.push"] = (flags & 0x08) ? "1" : "0";
      r.fields["tcp.flags.ack"] = (flags & 0x10) ? "1" : "0";
    } else {
      r.l4 = L4::udp;
      r.fields["udp.length"] = std::to_string(be16(l4 + 4));
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

IngestResult ingest_pcap(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open " + path.string());
  return ingest_pcap(in);
}

void write_pcap(std::ostream& out, const std::vector<PacketRecord>& records) {
  std::vector<std::uint8_t> buf;
  put_u32le(buf, kMagicMicro);
  put_u16le(buf, 2);
  put_u16le(buf, 4);
  put_u32le(buf, 0);
  put_u32le(buf, 0);
  put_u32le(buf, 262144);
  put_u32le(buf, kLinkEthernet);
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));

  for (const auto& r : records) {
    const std::size_t l4_hdr =
        r.l4 == L4::tcp ? std::max<std::size_t>(20, field_number(r, "tcp.hdr_len", 20) & ~std::size_t{3})
                        : kUdpHeader;
    const std::size_t min_len = kEthernetHeader + kIpv4Header + l4_hdr;
    const std::size_t frame_len = std::max(r.length, min_len);
    if (frame_len - kEthernetHeader > 65535) throw SizeError("pcap: packet exceeds IPv4 limit");
    std::vector<std::uint8_t> frame;
    frame.reserve(frame_len);
    frame.insert(frame.end(), {0x02, 0, 0, 0, 0, 0x01, 0x02, 0, 0, 0, 0, 0x02, 0x08, 0x00});

    const auto src = Ipv4Address::parse(r.src).value_or(Ipv4Address{});
    const auto dst = Ipv4Address::parse(r.dst).value_or(Ipv4Address{});
    const std::size_t ip_len = frame_len - kEthernetHeader;
    std::vector<std::uint8_t> ip{0x45, 0x00};
    put_u16be(ip, static_cast<std::uint16_t>(ip_len));
    ip.insert(ip.end(), {0x00, 0x00, 0x40, 0x00, 64,
                         static_cast<std::uint8_t>(r.l4 == L4::tcp ? 6 : 17), 0x00, 0x00});
    ip.insert(ip.end(), src.octets.begin(), src.octets.end());
    ip.insert(ip.end(), dst.octets.begin(), dst.octets.end());
    const std::uint16_t csum = wire::internet_checksum(ip);
    ip[10] = static_cast<std::uint8_t>(csum >> 8);
    ip[11] = static_cast<std::uint8_t>(csum & 0xff);
    frame.insert(frame.end(), ip.begin(), ip.end());

    put_u16be(frame, r.src_port);
    put_u16be(frame, r.dst_port);
    if (r.l4 == L4::tcp) {
      frame.insert(frame.end(), 8, 0);  // seq, ack
      frame.push_back(static_cast<std::uint8_t>((l4_hdr / 4) << 4));
      std::uint8_t flags = 0;
      if (flag(r, "tcp.flags.fin")) flags |= 0x01;
      if (flag(r, "tcp.flags.syn")) flags |= 0x02;
      if (flag(r, "tcp.flags.reset")) flags |= 0x04;
      if (flag(r, "tcp.flags.push")) flags |= 0x08;
      if (flag(r, "tcp.flags.ack")) flags |= 0x10;
      frame.push_back(flags);
      put_u16be(frame, static_cast<std::uint16_t>(field_number(r, "tcp.window_size_value", 0)));
      frame.insert(frame.end(), 4, 0);  // checksum, urgent pointer
      frame.insert(frame.end(), l4_hdr - 20, 0x01);  // NOP options
    } else {
      put_u16be(frame, static_cast<std::uint16_t>(ip_len - kIpv4Header));
      put_u16be(frame, 0);
    }
    frame.resize(frame_len, 0);

    const double whole = std::floor(r.ts);
    auto usec = static_cast<std::uint32_t>(std::llround((r.ts - whole) * 1e6));
    auto sec = static_cast<std::uint32_t>(whole);
    if (usec >= 1000000) {
      ++sec;
      usec -= 1000000;
    }
    std::vector<std::uint8_t> hdr;
    put_u32le(hdr, sec);
    put_u32le(hdr, usec);
    put_u32le(hdr, static_cast<std::uint32_t>(frame.size()));
    put_u32le(hdr, static_cast<std::uint32_t>(frame.size()));
    out.write(reinterpret_cast<const char*>(hdr.data()), static_cast<std::streamsize>(hdr.size()));
    out.write(reinterpret_cast<const char*>(frame.data()),
              static_cast<std::streamsize>(frame.size()));
  }
}

void write_pcap(const std::filesystem::path& path, const std::vector<PacketRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_pcap(out, records);
}

}  // namespace h3lab::capture
