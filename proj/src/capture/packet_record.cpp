#include "h3lab/capture/packet_record.hpp"

#include <charconv>

#include "h3lab/common/net.hpp"

namespace h3lab::capture {

std::string_view to_string(L4 l4) noexcept { return l4 == L4::tcp ? "tcp" : "udp"; }

namespace {

std::size_t number(const engine::AttackEvent& ev, const std::string& key, std::size_t fallback) {
  const auto* v = ev.find(key);
  if (v == nullptr) return fallback;
  std::size_t out = fallback;
  std::from_chars(v->data(), v->data() + v->size(), out);
  return out;
}

}  // namespace

PacketRecord record_from_event(const engine::AttackEvent& ev) {
  PacketRecord r;
  r.ts = ev.ts;
  const auto* src = ev.find("src");
  if (src != nullptr) r.src = *src;
  const Endpoint dst = Endpoint::parse(ev.target);
  r.dst = dst.host;
  r.dst_port = dst.port;
  r.src_port = static_cast<std::uint16_t>(number(ev, "sport", 0));
  const auto* l4 = ev.find("l4");
  r.l4 = l4 != nullptr && *l4 == "tcp" ? L4::tcp : L4::udp;

  for (const auto& [key, value] : ev.detail) {
    if (key.find('.') != std::string::npos) r.fields[key] = value;
  }
  const std::size_t payload = number(ev, "wire_len", ev.bytes);
  std::size_t ip_len = kIpv4Header + payload;
  if (r.l4 == L4::tcp) {
    ip_len += number(ev, "tcp.hdr_len", 20);
  } else {
    ip_len += kUdpHeader;
    r.fields["udp.length"] = std::to_string(kUdpHeader + payload);
  }
  r.fields["ip.len"] = std::to_string(ip_len);
  r.length = kEthernetHeader + ip_len;
  r.fields["frame.len"] = std::to_string(r.length);
  return r;
}

std::vector<PacketRecord> records_from_events(const std::vector<engine::AttackEvent>& events) {
  std::vector<PacketRecord> out;
  out.reserve(events.size());
  for (const auto& ev : events) out.push_back(record_from_event(ev));
  return out;
}

}  // namespace h3lab::capture
