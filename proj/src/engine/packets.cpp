#include "h3lab/engine/packets.hpp"

#include <algorithm>
#include <array>

#include "h3lab/common/text.hpp"
#include "h3lab/wire/varint.hpp"

namespace h3lab::engine {

namespace {

constexpr std::size_t kAeadTag = 16;
constexpr std::size_t kTlsRecordHeader = 5;

bool static_name(std::string_view name) {
  static constexpr std::array<std::string_view, 14> kStatic{
      ":method", ":path", ":scheme", ":authority", "user-agent", "accept",
      "accept-encoding", "accept-language", "content-length", "content-type",
      "upgrade", "connection", "transfer-encoding", "cookie"};
  return std::find(kStatic.begin(), kStatic.end(), name) != kStatic.end();
}

std::string join_sizes(const std::vector<std::size_t>& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(sizes[i]);
  }
  return out;
}

AttackEvent base_event(const Flow& flow, double ts, EventAction action, std::string_view proto,
                       std::string_view l4) {
  AttackEvent ev;
  ev.ts = ts;
  ev.worker_id = flow.worker_id;
  ev.action = action;
  ev.target = flow.target;
  ev.detail["src"] = flow.src;
  ev.detail["sport"] = std::to_string(flow.sport);
  ev.detail["proto"] = std::string(proto);
  ev.detail["l4"] = std::string(l4);
  ev.detail["role"] = flow.role;
  if (flow.client != nullptr) ev.detail["client"] = std::string(flow.client->name);
  return ev;
}

std::vector<std::pair<std::string, std::string>> all_fields(const RequestHead& head) {
  std::vector<std::pair<std::string, std::string>> fields{
      {":method", head.method}, {":path", head.path}, {":scheme", "https"},
      {":authority", head.authority}};
  fields.insert(fields.end(), head.headers.begin(), head.headers.end());
  return fields;
}

std::size_t stream_frame_overhead(std::uint64_t stream_id, std::size_t len) {
  return 1 + wire::varint_length(stream_id) + wire::varint_length(len);
}

std::size_t h3_frame_size(std::size_t payload) {
  return 1 + wire::varint_length(payload) + payload;
}

void set_short_header(AttackEvent& ev, const ClientProfile& client, SplitMix64& rng) {
  ev.detail["quic.fixed_bit"] = "1";
  ev.detail["quic.spin_bit"] = std::to_string(rng.below(2));
  ev.detail["quic.packet_number_length"] = std::to_string(client.packet_number_len);
}

void set_tcp_data(AttackEvent& ev, const ClientProfile& client, std::size_t payload_len,
                  bool push) {
  ev.detail["tcp.hdr_len"] = std::to_string(client.tcp_data_header_len);
  if (client.tcp_data_header_len > 20) {
    ev.detail["tcp.option_len"] = std::to_string(client.tcp_data_header_len - 20);
  }
  ev.detail["tcp.window_size_value"] = std::to_string(client.tcp_window);
  ev.detail["tcp.len"] = std::to_string(payload_len);
  ev.detail["tcp.flags.syn"] = "0";
  ev.detail["tcp.flags.ack"] = "1";
  ev.detail["tcp.flags.push"] = push ? "1" : "0";
  ev.detail["tcp.flags.reset"] = "0";
  ev.detail["tcp.flags.fin"] = "0";
}

}  // namespace

std::size_t field_section_size(const RequestHead& head) {
  std::size_t size = 2;  // required insert count + base
  for (const auto& [name, value] : all_fields(head)) {
    size += 2 + value.size();
    if (!static_name(name)) size += name.size();
  }
  return size;
}

std::string render_http1_head(const RequestHead& head) {
  std::string out = head.method + " " + head.path + " HTTP/1.1\r\nHost: " + head.authority +
                    "\r\n";
  for (const auto& [name, value] : head.headers) out += name + ": " + value + "\r\n";
  out += "\r\n";
  return out;
}

AttackEvent quic_initial(const Flow& flow, double ts, SplitMix64& rng) {
  const ClientProfile& c = *flow.client;
  AttackEvent ev = base_event(flow, ts, EventAction::connect, "quic", "udp");
  std::size_t hello = c.client_hello_len;
  if (c.client_hello_jitter > 0) {
    hello = hello - c.client_hello_jitter + rng.below(2 * c.client_hello_jitter + 1);
  }
  const std::size_t size = c.quic_initial_size;
  // flags + version + dcid len/dcid + scid len/scid + token len + length(2)
  const std::size_t header = 1 + 4 + 1 + c.dcid_len + 1 + 8 + 1 + 2;
  const std::size_t crypto = hello + 4;
  const std::size_t crypto_frame = 1 + 1 + wire::varint_length(crypto) + crypto;
  const std::size_t used = header + c.packet_number_len + crypto_frame + kAeadTag;
  ev.detail["wire_len"] = std::to_string(size);
  ev.detail["quic.long.packet_type"] = "0";
  ev.detail["quic.fixed_bit"] = "1";
  ev.detail["quic.packet_length"] = std::to_string(size);
  ev.detail["quic.packet_number_length"] = std::to_string(c.packet_number_len);
  ev.detail["quic.length"] = std::to_string(size - header);
  ev.detail["quic.token_length"] = "0";
  ev.detail["quic.crypto.length"] = std::to_string(crypto);
  ev.detail["quic.padding_length"] = std::to_string(size > used ? size - used : 0);
  ev.detail["tls.handshake.length"] = std::to_string(hello);
  ev.detail["tls.handshake.session_id_length"] = "0";
  ev.detail["tls.handshake.cipher_suites_length"] = std::to_string(c.quic_cipher_suites_len);
  ev.detail["tls.handshake.extensions_length"] =
      std::to_string(hello - 41 - c.quic_cipher_suites_len);
  return ev;
}

AttackEvent h3_request(const Flow& flow, double ts, const RequestHead& head,
                       std::vector<std::uint8_t> body, const H3RequestOptions& opts,
                       SplitMix64& rng) {
  const ClientProfile& c = *flow.client;
  AttackEvent ev = base_event(flow, ts, EventAction::request, "h3", "udp");
  std::vector<std::size_t> frames;
  std::size_t stream_bytes = 0;
  if (!opts.continuation) {
    const std::size_t headers = field_section_size(head);
    frames.push_back(headers);
    stream_bytes += h3_frame_size(headers);
    ev.detail["method"] = head.method;
    ev.detail["path"] = head.path;
  } else {
    ev.detail["stream"] = "continue";
  }
  if (!body.empty()) {
    frames.push_back(body.size());
    stream_bytes += h3_frame_size(body.size());
  }
  std::size_t packet = 1 + c.dcid_len + c.packet_number_len +
                       stream_frame_overhead(0, stream_bytes) + stream_bytes + kAeadTag;
  if (opts.first_on_connection && c.nci_frames > 0) {
    packet += c.nci_frames * (4 + 8 + 16);
    ev.detail["quic.nci.connection_id.length"] =
        join_sizes(std::vector<std::size_t>(c.nci_frames, 8));
  }
  set_short_header(ev, c, rng);
  ev.detail["wire_len"] = std::to_string(packet);
  ev.detail["quic.packet_length"] = std::to_string(packet);
  ev.detail["quic.stream.len"] = std::to_string(stream_bytes);
  ev.detail["quic.stream.fin"] = opts.fin ? "1" : "0";
  if (!frames.empty()) ev.detail["http3.frame_length"] = join_sizes(frames);
  ev.bytes = body.size();

  auto payload = std::make_shared<EventPayload>();
  if (!opts.continuation) payload->head = head;
  payload->body = std::move(body);
  ev.payload = std::move(payload);
  return ev;
}

AttackEvent h3_settings(const Flow& flow, double ts, const wire::SettingsFrame& settings,
                        SplitMix64& rng) {
  const ClientProfile& c = *flow.client;
  AttackEvent ev = base_event(flow, ts, EventAction::request, "h3", "udp");
  auto bytes = wire::build_settings_frame(settings);
  // stream type byte + SETTINGS frame on the client control stream (id 2)
  const std::size_t stream_bytes = 1 + bytes.size();
  const std::size_t packet = 1 + c.dcid_len + c.packet_number_len +
                             stream_frame_overhead(2, stream_bytes) + stream_bytes + kAeadTag;
  set_short_header(ev, c, rng);
  ev.detail["frame"] = "SETTINGS";
  ev.detail["wire_len"] = std::to_string(packet);
  ev.detail["quic.packet_length"] = std::to_string(packet);
  ev.detail["quic.stream.len"] = std::to_string(stream_bytes);
  ev.detail["quic.stream.fin"] = "0";
  ev.detail["http3.frame_length"] = std::to_string(bytes.size() - 2);
  if (settings.max_table_capacity) {
    ev.detail["http3.settings.qpack.max_table_capacity"] =
        std::to_string(*settings.max_table_capacity);
  }
  if (settings.blocked_streams) {
    ev.detail["http3.settings.qpack.blocked_streams"] = std::to_string(*settings.blocked_streams);
  }
  if (settings.max_field_section_size) {
    ev.detail["http3.settings.max_field_section_size"] =
        std::to_string(*settings.max_field_section_size);
  }
  ev.detail["cve_trigger"] = wire::triggers_low_capacity_bug(settings) ? "true" : "false";
  ev.bytes = bytes.size();

  auto payload = std::make_shared<EventPayload>();
  payload->control = std::move(bytes);
  payload->settings = settings;
  ev.payload = std::move(payload);
  return ev;
}

AttackEvent quic_close(const Flow& flow, double ts, EventAction action, SplitMix64& rng) {
  const ClientProfile& c = *flow.client;
  AttackEvent ev = base_event(flow, ts, action, "quic", "udp");
  const std::size_t packet = 1 + c.dcid_len + c.packet_number_len + 4 + kAeadTag;
  set_short_header(ev, c, rng);
  ev.detail["wire_len"] = std::to_string(packet);
  ev.detail["quic.packet_length"] = std::to_string(packet);
  return ev;
}

AttackEvent tcp_syn(const Flow& flow, double ts, HttpVersion version) {
  const ClientProfile& c = *flow.client;
  AttackEvent ev = base_event(flow, ts, EventAction::connect, to_string(version), "tcp");
  ev.detail["wire_len"] = "0";
  ev.detail["tcp.hdr_len"] = std::to_string(c.tcp_syn_header_len);
  ev.detail["tcp.option_len"] = std::to_string(c.tcp_syn_header_len - 20);
  ev.detail["tcp.window_size_value"] = std::to_string(c.tcp_window);
  ev.detail["tcp.len"] = "0";
  ev.detail["tcp.flags.syn"] = "1";
  ev.detail["tcp.flags.ack"] = "0";
  ev.detail["tcp.flags.push"] = "0";
  ev.detail["tcp.flags.reset"] = "0";
  ev.detail["tcp.flags.fin"] = "0";
  return ev;
}

AttackEvent h2_request(const Flow& flow, double ts, const RequestHead& head,
                       std::vector<std::uint8_t> body, const H2RequestOptions& opts) {
  const ClientProfile& c = *flow.client;
  AttackEvent ev = base_event(flow, ts, EventAction::request, "h2", "tcp");
  std::vector<std::size_t> frames;
  std::size_t h2_bytes = 0;
  if (opts.first_on_connection) {
    // connection preface, SETTINGS (3 entries), WINDOW_UPDATE
    h2_bytes += 24;
    frames.push_back(18);
    frames.push_back(4);
    h2_bytes += 9 + 18 + 9 + 4;
    ev.detail["h2.max_concurrent_streams"] = std::to_string(opts.max_concurrent_streams);
  }
  const std::size_t headers = field_section_size(head);
  frames.push_back(headers);
  h2_bytes += 9 + headers;
  if (!body.empty()) {
    frames.push_back(body.size());
    h2_bytes += 9 + body.size();
  }
  std::vector<std::size_t> header_len, name_len, value_len;
  for (const auto& [name, value] : all_fields(head)) {
    header_len.push_back(name.size() + value.size() + 32);
    name_len.push_back(name.size());
    value_len.push_back(value.size());
    if (name == "content-length") ev.detail["http2.headers.content_length"] = value;
  }
  const std::size_t record = h2_bytes + 1 + kAeadTag;
  const std::size_t segment = kTlsRecordHeader + record;
  set_tcp_data(ev, c, segment, true);
  ev.detail["wire_len"] = std::to_string(segment);
  ev.detail["tls.record.length"] = std::to_string(record);
  ev.detail["http2.length"] = join_sizes(frames);
  ev.detail["http2.header.length"] = join_sizes(header_len);
  ev.detail["http2.header.name.length"] = join_sizes(name_len);
  ev.detail["http2.header.value.length"] = join_sizes(value_len);
  ev.detail["method"] = head.method;
  ev.detail["path"] = head.path;
  ev.bytes = body.size();

  auto payload = std::make_shared<EventPayload>();
  payload->head = head;
  payload->body = std::move(body);
  ev.payload = std::move(payload);
  return ev;
}

AttackEvent h2_flow_control(const Flow& flow, double ts, EventAction action) {
  const ClientProfile& c = *flow.client;
  AttackEvent ev = base_event(flow, ts, action, "h2", "tcp");
  // pause: SETTINGS_INITIAL_WINDOW_SIZE = 0; resume: WINDOW_UPDATE
  const std::size_t frame = action == EventAction::pause ? 6 : 4;
  const std::size_t record = 9 + frame + 1 + kAeadTag;
  const std::size_t segment = kTlsRecordHeader + record;
  set_tcp_data(ev, c, segment, true);
  ev.detail["wire_len"] = std::to_string(segment);
  ev.detail["tls.record.length"] = std::to_string(record);
  ev.detail["http2.length"] = std::to_string(frame);
  return ev;
}

AttackEvent h1_request(const Flow& flow, double ts, std::string raw, std::size_t body_len,
                       const std::map<std::string, std::string>& http_fields) {
  const ClientProfile& c = *flow.client;
  AttackEvent ev = base_event(flow, ts, EventAction::request, "h1.1", "tcp");
  const std::size_t record = raw.size() + 1 + kAeadTag;
  const std::size_t segment = kTlsRecordHeader + record;
  set_tcp_data(ev, c, segment, true);
  ev.detail["wire_len"] = std::to_string(segment);
  ev.detail["tls.record.length"] = std::to_string(record);
  for (const auto& [k, v] : http_fields) ev.detail[k] = v;
  ev.bytes = body_len;

  auto payload = std::make_shared<EventPayload>();
  payload->body.assign(raw.begin(), raw.end());
  ev.payload = std::move(payload);
  return ev;
}

AttackEvent tcp_teardown(const Flow& flow, double ts, EventAction action,
                         HttpVersion version) {
  const ClientProfile& c = *flow.client;
  AttackEvent ev = base_event(flow, ts, action, to_string(version), "tcp");
  set_tcp_data(ev, c, 0, false);
  ev.detail["wire_len"] = "0";
  if (action == EventAction::timeout) {
    ev.detail["tcp.flags.reset"] = "1";
  } else {
    ev.detail["tcp.flags.fin"] = "1";
  }
  return ev;
}

AttackEvent raw_datagram(const Flow& flow, double ts, std::vector<std::uint8_t> payload_bytes) {
  AttackEvent ev = base_event(flow, ts, EventAction::send_datagram, "udp", "udp");
  ev.detail["wire_len"] = std::to_string(payload_bytes.size());
  // A dissector on the HTTPS port reads the first byte as a QUIC header.
  const bool https_port = flow.target.ends_with(":443");
  if (https_port && !payload_bytes.empty()) {
    const std::uint8_t b = payload_bytes.front();
    ev.detail["quic.packet_length"] = std::to_string(payload_bytes.size());
    ev.detail["quic.fixed_bit"] = std::to_string((b >> 6) & 1);
    if (b & 0x80) {
      ev.detail["quic.long.packet_type"] = std::to_string((b >> 4) & 3);
    } else {
      ev.detail["quic.spin_bit"] = std::to_string((b >> 5) & 1);
    }
  }
  ev.bytes = payload_bytes.size();
  auto payload = std::make_shared<EventPayload>();
  payload->body = std::move(payload_bytes);
  ev.payload = std::move(payload);
  return ev;
}

AttackEvent dns_query(const Flow& flow, double ts, const std::string& name, std::uint16_t id) {
  AttackEvent ev = base_event(flow, ts, EventAction::send_datagram, "dns", "udp");
  // header + QNAME (length-prefixed labels + root) + QTYPE/QCLASS
  std::vector<std::uint8_t> msg{static_cast<std::uint8_t>(id >> 8),
                                static_cast<std::uint8_t>(id & 0xff), 0x01, 0x00, 0x00, 0x01,
                                0x00, 0x00, 0x00, 0x00, 0x00, 0x00};
  for (const auto& label : split(name, '.')) {
    msg.push_back(static_cast<std::uint8_t>(label.size()));
    msg.insert(msg.end(), label.begin(), label.end());
  }
  msg.insert(msg.end(), {0x00, 0x00, 0x01, 0x00, 0x01});
  ev.detail["wire_len"] = std::to_string(msg.size());
  ev.detail["dns.count.queries"] = "1";
  ev.detail["dns.count.answers"] = "0";
  ev.detail["dns.flags.response"] = "0";
  ev.bytes = msg.size();
  auto payload = std::make_shared<EventPayload>();
  payload->body = std::move(msg);
  ev.payload = std::move(payload);
  return ev;
}

}  // namespace h3lab::engine
