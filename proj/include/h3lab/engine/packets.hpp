#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "h3lab/common/rng.hpp"
#include "h3lab/engine/attack_event.hpp"
#include "h3lab/engine/client_profile.hpp"
#include "h3lab/engine/protocol.hpp"
#include "h3lab/wire/settings_frame.hpp"

// Builders for the single packet each action puts on the wire. Every
// builder fills the log detail with the fields a dissector would see in
// cleartext (or after TLS key-log decryption), keyed by dissector name.

namespace h3lab::engine {

/// Who sends, to where, with which client stack.
struct Flow {
  std::string target;  // host:port
  std::size_t worker_id = 0;
  std::string src;
  std::uint16_t sport = 0;
  std::string role;
  const ClientProfile* client = nullptr;
};

/// QPACK/HPACK field section size estimate: static-table names cost their
/// value plus two bytes; literal names also pay for the name.
std::size_t field_section_size(const RequestHead& head);

/// Renders an HTTP/1.1 request head ("GET / HTTP/1.1\r\nHost: ...\r\n\r\n").
std::string render_http1_head(const RequestHead& head);

AttackEvent quic_initial(const Flow& flow, double ts, SplitMix64& rng);

struct H3RequestOptions {
  bool fin = true;
  bool first_on_connection = true;
  /// Body-only continuation of a stream already opened.
  bool continuation = false;
};

AttackEvent h3_request(const Flow& flow, double ts, const RequestHead& head,
                       std::vector<std::uint8_t> body, const H3RequestOptions& opts,
                       SplitMix64& rng);

AttackEvent h3_settings(const Flow& flow, double ts, const wire::SettingsFrame& settings,
                        SplitMix64& rng);

/// CONNECTION_CLOSE in a 1-RTT packet; `action` is close or timeout.
AttackEvent quic_close(const Flow& flow, double ts, EventAction action, SplitMix64& rng);

AttackEvent tcp_syn(const Flow& flow, double ts, HttpVersion version);

struct H2RequestOptions {
  bool first_on_connection = true;
  bool end_stream = true;
  std::uint64_t max_concurrent_streams = 100;
};

AttackEvent h2_request(const Flow& flow, double ts, const RequestHead& head,
                       std::vector<std::uint8_t> body, const H2RequestOptions& opts);

/// Flow-control frame used to stall (pause) or release (resume) streams.
AttackEvent h2_flow_control(const Flow& flow, double ts, EventAction action);

/// HTTP/1.1 request inside TLS. `raw` is the complete request text;
/// `body_len` the bytes after the blank line.
AttackEvent h1_request(const Flow& flow, double ts, std::string raw, std::size_t body_len,
                       const std::map<std::string, std::string>& http_fields);

/// FIN (close) or RST (timeout) segment.
AttackEvent tcp_teardown(const Flow& flow, double ts, EventAction action, HttpVersion version);

/// Raw UDP datagram with arbitrary payload.
AttackEvent raw_datagram(const Flow& flow, double ts, std::vector<std::uint8_t> payload);

AttackEvent dns_query(const Flow& flow, double ts, const std::string& name, std::uint16_t id);

}  // namespace h3lab::engine
