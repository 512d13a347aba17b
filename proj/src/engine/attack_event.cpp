#include "h3lab/engine/attack_event.hpp"

#include <array>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "h3lab/common/error.hpp"
#include "h3lab/common/text.hpp"

namespace h3lab::engine {

namespace {

constexpr std::array<std::pair<EventAction, std::string_view>, 7> kActions{{
    {EventAction::connect, "connect"},
    {EventAction::request, "request"},
    {EventAction::send_datagram, "send_datagram"},
    {EventAction::pause, "pause"},
    {EventAction::resume, "resume"},
    {EventAction::close, "close"},
    {EventAction::timeout, "timeout"},
}};

}  // namespace

std::string_view to_string(EventAction action) noexcept {
  for (const auto& [a, name] : kActions) {
    if (a == action) return name;
  }
  return "?";
}

std::optional<EventAction> parse_event_action(std::string_view text) noexcept {
  for (const auto& [a, name] : kActions) {
    if (name == text) return a;
  }
  return std::nullopt;
}

std::string to_json_line(const AttackEvent& event) {
  // ts is emitted through format_double so the text is the shortest
  // round-trip form and identical across runs.
  nlohmann::json detail(event.detail);
  std::string out = "{\"action\":\"";
  out += to_string(event.action);
  out += "\",\"bytes\":";
  out += std::to_string(event.bytes);
  out += ",\"detail\":";
  out += detail.dump();
  out += ",\"target\":";
  out += nlohmann::json(event.target).dump();
  out += ",\"ts\":";
  out += format_double(event.ts);
  out += ",\"worker_id\":";
  out += std::to_string(event.worker_id);
  out += "}";
  return out;
}

AttackEvent parse_event_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("event log: ") + e.what());
  }
  try {
    AttackEvent ev;
    ev.ts = j.at("ts").get<double>();
    ev.worker_id = j.at("worker_id").get<std::size_t>();
    const auto action = parse_event_action(j.at("action").get<std::string>());
    if (!action) throw DecodeError("event log: unknown action");
    ev.action = *action;
    ev.target = j.at("target").get<std::string>();
    ev.bytes = j.at("bytes").get<std::size_t>();
    ev.detail = j.at("detail").get<std::map<std::string, std::string>>();
    return ev;
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("event log: ") + e.what());
  }
}

void write_event_log(std::ostream& out, const std::vector<AttackEvent>& events,
                     bool truncated) {
  for (const auto& ev : events) out << to_json_line(ev) << '\n';
  if (truncated) out << kTruncationMarker << '\n';
}

EventLog read_event_log(std::istream& in) {
  EventLog log;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == kTruncationMarker) {
      log.truncated = true;
      continue;
    }
    log.events.push_back(parse_event_line(line));
  }
  return log;
}

}  // namespace h3lab::engine
