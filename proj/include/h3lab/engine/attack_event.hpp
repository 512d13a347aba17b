#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "h3lab/wire/settings_frame.hpp"

namespace h3lab::engine {

enum class EventAction { connect, request, send_datagram, pause, resume, close, timeout };

std::string_view to_string(EventAction action) noexcept;
std::optional<EventAction> parse_event_action(std::string_view text) noexcept;

/// Request line + headers as handed to a transport.
struct RequestHead {
  std::string method;
  std::string path = "/";
  std::string authority;
  std::vector<std::pair<std::string, std::string>> headers;
};

/// Bytes behind an event. Kept in memory for live execution; never
/// serialized into the event log.
struct EventPayload {
  std::optional<RequestHead> head;
  std::vector<std::uint8_t> body;
  /// Serialized control-stream frame (the tampered SETTINGS) when present.
  std::vector<std::uint8_t> control;
  std::optional<wire::SettingsFrame> settings;
};

/// One simulated or executed traffic action.
///
/// `bytes` is the application payload the action carries (HTTP body,
/// datagram payload, SETTINGS frame); the L4 payload size of its packet is
/// detail["wire_len"]. `detail` holds metadata;
/// keys that are wire-visible protocol fields use the dissector names of
/// the feature schema (e.g. "quic.packet_length"), with multi-valued
/// fields comma-separated. Other keys: src, sport, proto, role, client,
/// method, phase, label, ...
struct AttackEvent {
  double ts = 0.0;
  std::size_t worker_id = 0;
  EventAction action = EventAction::request;
  std::string target;
  std::size_t bytes = 0;
  std::map<std::string, std::string> detail;
  std::shared_ptr<const EventPayload> payload;

  const std::string* find(const std::string& key) const {
    auto it = detail.find(key);
    return it == detail.end() ? nullptr : &it->second;
  }
};

/// Serializes the six log fields {ts, worker_id, action, target, bytes,
/// detail} as one compact JSON object, no trailing newline.
std::string to_json_line(const AttackEvent& event);

/// Throws DecodeError on malformed lines or missing fields.
AttackEvent parse_event_line(std::string_view line);

/// Line written after a partial log when a run was interrupted.
inline constexpr std::string_view kTruncationMarker = R"({"truncated":true})";

/// One line per event, then kTruncationMarker if `truncated`.
void write_event_log(std::ostream& out, const std::vector<AttackEvent>& events,
                     bool truncated = false);

struct EventLog {
  std::vector<AttackEvent> events;
  bool truncated = false;
};

EventLog read_event_log(std::istream& in);

}  // namespace h3lab::engine
