#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "h3lab/common/error.hpp"
#include "h3lab/engine/attack_event.hpp"
#include "h3lab/engine/identity.hpp"
#include "h3lab/engine/planner.hpp"
#include "h3lab/engine/sink.hpp"
#include "h3lab/engine/transport.hpp"
#include "h3lab/wire/settings_frame.hpp"

using namespace h3lab;
using namespace h3lab::engine;

namespace {

AttackPlan plan(AttackKind kind, AttackParams p, double duration, double start = 0.0) {
  p.duration = duration;
  PlanWindow w{start, start + duration, "10.0.0.4:443"};
  return build_plan(kind, p, w);
}

std::size_t count(const AttackPlan& pl, EventAction a) {
  return static_cast<std::size_t>(std::count_if(pl.events.begin(), pl.events.end(),
                                                [&](const AttackEvent& e) { return e.action == a; }));
}

std::string serialize(const std::vector<AttackEvent>& events) {
  std::ostringstream s;
  write_event_log(s, events);
  return s.str();
}

class MockTransport final : public Transport {
 public:
  ConnectionId open_connection(const ConnectionParams& params) override {
    std::lock_guard lock(mutex);
    calls.push_back("open " + params.proto);
    if (params.settings) settings.push_back(*params.settings);
    return ++next;
  }
  StreamId open_stream(ConnectionId, const RequestHead* head) override {
    std::lock_guard lock(mutex);
    calls.push_back(std::string("stream ") + (head ? head->method : "raw"));
    return ++next;
  }
  void write(ConnectionId, StreamId, std::span<const std::uint8_t> bytes) override {
    std::lock_guard lock(mutex);
    written += bytes.size();
  }
  void write_control(ConnectionId, std::span<const std::uint8_t> bytes) override {
    std::lock_guard lock(mutex);
    control.emplace_back(bytes.begin(), bytes.end());
  }
  void pause(ConnectionId) override { log("pause"); }
  void resume(ConnectionId) override { log("resume"); }
  void close(ConnectionId) override { log("close"); }
  void send_datagram(const Endpoint&, std::span<const std::uint8_t> bytes) override {
    std::lock_guard lock(mutex);
    datagrams.emplace_back(bytes.begin(), bytes.end());
    if (fail_datagrams) throw TransportError("unreachable");
  }
  void log(const std::string& s) {
    std::lock_guard lock(mutex);
    calls.push_back(s);
  }

  std::mutex mutex;
  std::vector<std::string> calls;
  std::vector<wire::SettingsFrame> settings;
  std::vector<std::vector<std::uint8_t>> control;
  std::vector<std::vector<std::uint8_t>> datagrams;
  std::size_t written = 0;
  ConnectionId next = 0;
  bool fail_datagrams = false;
};

}  // namespace

TEST_CASE("attack kind names round trip") {
  for (auto k : all_attack_kinds()) CHECK(parse_attack_kind(to_string(k)) == k);
  CHECK(dataset_attack_kinds().size() == 10);
  CHECK_FALSE(parse_attack_kind("http3-nope"));
  CHECK(to_string(AttackKind::Http3Flood) == "http3-flood");
}

TEST_CASE("params validation") {
  auto p = default_params(AttackKind::Http3Flood);
  CHECK_NOTHROW(validate(p));
  p.parallelism = 0;
  CHECK_THROWS_AS(validate(p), ParameterError);
  p = default_params(AttackKind::Http3Flood);
  p.duration = 0;
  CHECK_THROWS_AS(validate(p), ParameterError);
  p = default_params(AttackKind::Http3Flood);
  p.request_period = -1;
  CHECK_THROWS_AS(validate(p), ParameterError);
  CHECK_THROWS_AS(parse_smuggle_variant("cl_cl"), ParameterError);
}

TEST_CASE("flood defaults: 10 workers, gaps at most 1 s") {
  const auto pl = plan(AttackKind::Http3Flood, default_params(AttackKind::Http3Flood), 60);
  std::map<std::size_t, std::vector<double>> req;
  for (const auto& e : pl.events) {
    if (e.action == EventAction::request) req[e.worker_id].push_back(e.ts);
  }
  CHECK(req.size() == 10);
  for (const auto& [w, ts] : req) {
    CHECK(ts.size() >= 59);
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] - ts[i - 1] <= 1.0 + 1e-9);
  }
  for (const auto& e : pl.events) {
    if (e.action == EventAction::request) {
      CHECK(e.bytes == 26);
      CHECK(*e.find("settings_header") == "0");
    }
  }
}

TEST_CASE("flood degenerate window gives one request") {
  auto p = default_params(AttackKind::Http3Flood);
  p.parallelism = 1;
  p.per_request_timeout = 1.0;
  CHECK(count(plan(AttackKind::Http3Flood, p, 1), EventAction::request) == 1);
}

TEST_CASE("plans are deterministic and seed dependent") {
  auto p = default_params(AttackKind::Http3Flood);
  p.seed = 42;
  const auto a = plan(AttackKind::Http3Flood, p, 60);
  const auto b = plan(AttackKind::Http3Flood, p, 60);
  CHECK(serialize(a.events) == serialize(b.events));
  p.seed = 43;
  CHECK(serialize(plan(AttackKind::Http3Flood, p, 60).events) != serialize(a.events));
}

TEST_CASE("every plan is sorted, within its window and tagged") {
  for (auto kind : dataset_attack_kinds()) {
    auto p = default_params(kind);
    const auto pl = plan(kind, p, 30, 100);
    CAPTURE(to_string(kind));
    CHECK_FALSE(pl.events.empty());
    CHECK(pl.metadata.at("kind") == to_string(kind));
    CHECK(std::is_sorted(pl.events.begin(), pl.events.end(),
                         [](const AttackEvent& x, const AttackEvent& y) { return x.ts < y.ts; }));
    const auto addrs = default_attacker_identity().all_addresses();
    for (const auto& e : pl.events) {
      CHECK(e.ts >= 100);
      CHECK(e.ts <= 130);
      if (e.action != EventAction::close && e.action != EventAction::timeout) CHECK(e.ts < 130);
      CHECK(std::find(addrs.begin(), addrs.end(), *e.find("src")) != addrs.end());
    }
  }
}

TEST_CASE("slow POST: 40 connections closed at 5 s carrying 32 bytes") {
  const auto pl = plan(AttackKind::SlowRatePost, default_params(AttackKind::SlowRatePost), 5);
  CHECK(count(pl, EventAction::connect) == 40);
  std::map<std::size_t, std::size_t> bytes;
  std::size_t closes = 0;
  for (const auto& e : pl.events) {
    if (e.action == EventAction::request) bytes[e.worker_id] += e.bytes;
    if (e.action == EventAction::close) {
      CHECK(e.ts == doctest::Approx(5.0));
      ++closes;
    }
  }
  CHECK(closes == 40);
  for (const auto& [w, b] : bytes) CHECK(b == 32);
}

TEST_CASE("slow POST with empty body") {
  auto p = default_params(AttackKind::SlowRatePost);
  p.payload_len = 0;
  const auto pl = plan(AttackKind::SlowRatePost, p, 5);
  CHECK(count(pl, EventAction::request) == 40);
  for (const auto& e : pl.events) {
    if (e.action == EventAction::request) {
      CHECK(e.bytes == 0);
      REQUIRE(e.payload);
      CHECK(e.payload->head->method == "POST");
    }
  }
}

TEST_CASE("tables/streams trigger flag follows the SETTINGS values") {
  auto p = default_params(AttackKind::Http3TablesStreams);
  p.settings = wire::kSettingsVariantLow;
  CHECK(plan(AttackKind::Http3TablesStreams, p, 10).cve_trigger());
  p.settings = wire::kSettingsVariantHigh;
  CHECK_FALSE(plan(AttackKind::Http3TablesStreams, p, 10).cve_trigger());
  p.settings = wire::SettingsFrame{32, 4, std::nullopt};
  CHECK_FALSE(plan(AttackKind::Http3TablesStreams, p, 10).cve_trigger());
  p.settings.reset();
  CHECK_THROWS_AS(plan(AttackKind::Http3TablesStreams, p, 10), ParameterError);
}

TEST_CASE("tables/streams sends the tampered frame") {
  auto p = default_params(AttackKind::Http3TablesStreams);
  p.settings = wire::kSettingsVariantLow;
  const auto pl = plan(AttackKind::Http3TablesStreams, p, 10);
  std::size_t frames = 0;
  for (const auto& e : pl.events) {
    if (const auto* cap = e.find("http3.settings.qpack.max_table_capacity")) {
      CHECK(*cap == "16");
      REQUIRE(e.payload);
      CHECK(e.payload->control == wire::build_settings_frame(wire::kSettingsVariantLow));
      ++frames;
    }
  }
  CHECK(frames > 0);
}

TEST_CASE("loris: one worker sends every 5 s") {
  auto p = default_params(AttackKind::Http3Loris);
  p.parallelism = 1;
  const auto pl = plan(AttackKind::Http3Loris, p, 60);
  std::vector<double> ts;
  for (const auto& e : pl.events) {
    if (e.action == EventAction::request) ts.push_back(e.ts);
  }
  REQUIRE(ts.size() == 12);
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(ts[i] == doctest::Approx(5.0 * i));
}

TEST_CASE("loris sends less than the flood") {
  auto lp = default_params(AttackKind::Http3Loris);
  lp.parallelism = 1;
  auto fp = default_params(AttackKind::Http3Flood);
  fp.parallelism = 1;
  CHECK(plan(AttackKind::Http3Flood, fp, 10).events.size() >=
        plan(AttackKind::Http3Loris, lp, 10).events.size());
}

TEST_CASE("zero-length windows yield nothing") {
  for (auto kind : {AttackKind::Http3Loris, AttackKind::Http2Pause}) {
    auto p = default_params(kind);
    PlanWindow w{5, 5, "10.0.0.4:443"};
    CHECK(build_plan(kind, p, w).events.empty());
  }
}

TEST_CASE("QUIC-enc alternates inner transports with valid IPv4") {
  auto p = default_params(AttackKind::QuicEnc);
  p.parallelism = 1;
  const auto pl = plan(AttackKind::QuicEnc, p, 0.2);
  std::vector<const AttackEvent*> dgrams;
  for (const auto& e : pl.events) {
    if (e.action == EventAction::send_datagram) dgrams.push_back(&e);
  }
  REQUIRE(dgrams.size() == 2);
  CHECK(*dgrams[0]->find("inner") == "tcp");
  CHECK(*dgrams[1]->find("inner") == "udp");
  for (const auto* e : dgrams) {
    const auto& b = e->payload->body;
    REQUIRE(b.size() >= 20);
    CHECK(b[0] == 0x45);
    CHECK(((b[2] << 8) | b[3]) == static_cast<int>(b.size()));
    CHECK(b[9] == (*e->find("inner") == "tcp" ? 6 : 17));
  }
}

TEST_CASE("fuzzing honours the maximum length and the seed") {
  auto p = default_params(AttackKind::Fuzzing);
  p.payload_len = 100;
  p.seed = 1;
  const auto a = plan(AttackKind::Fuzzing, p, 2);
  std::size_t n = 0;
  for (const auto& e : a.events) {
    if (e.action != EventAction::send_datagram) continue;
    CHECK(e.bytes >= 1);
    CHECK(e.bytes <= 100);
    ++n;
  }
  CHECK(n > 10);
  CHECK(a.metadata.at("max_datagram_len") == "100");
  CHECK(serialize(plan(AttackKind::Fuzzing, p, 2).events) == serialize(a.events));
  p.seed = 2;
  CHECK(serialize(plan(AttackKind::Fuzzing, p, 2).events) != serialize(a.events));
}

TEST_CASE("HTTP/2 concurrency limits and fallback") {
  auto p = default_params(AttackKind::Http2Concurrent);
  auto pl = plan(AttackKind::Http2Concurrent, p, 10);
  CHECK(pl.metadata.at("max_total_connections") == "100000");
  CHECK(pl.metadata.at("max_concurrent_streams") == "100000");
  CHECK(pl.metadata.at("fallback") == "none");
  p.max_total_connections = 1;
  CHECK(count(plan(AttackKind::Http2Concurrent, p, 10), EventAction::connect) == 1);
  p = default_params(AttackKind::Http2Concurrent);
  p.target_capabilities = Capabilities{HttpVersion::h1_1};
  pl = plan(AttackKind::Http2Concurrent, p, 10);
  CHECK(pl.metadata.at("fallback") == "http/1.1");
  for (const auto& e : pl.events) CHECK(e.find("http2.length") == nullptr);
}

TEST_CASE("HTTP/2 pause alternates strictly") {
  auto p = default_params(AttackKind::Http2Pause);
  p.parallelism = 1;
  p.pause_period = 1.0;
  const auto pl = plan(AttackKind::Http2Pause, p, 4);
  std::vector<std::pair<EventAction, double>> seq;
  for (const auto& e : pl.events) {
    if (e.action == EventAction::pause || e.action == EventAction::resume) {
      seq.emplace_back(e.action, e.ts);
    }
  }
  REQUIRE(seq.size() == 3);
  CHECK(seq[0] == std::pair{EventAction::pause, 1.0});
  CHECK(seq[1] == std::pair{EventAction::resume, 2.0});
  CHECK(seq[2] == std::pair{EventAction::pause, 3.0});
  for (double d : {3.0, 7.5, 20.0}) {
    const auto q = plan(AttackKind::Http2Pause, default_params(AttackKind::Http2Pause), d);
    const auto diff = static_cast<long>(count(q, EventAction::pause)) -
                      static_cast<long>(count(q, EventAction::resume));
    CHECK(diff >= 0);
    CHECK(diff <= static_cast<long>(q.params.parallelism));
  }
}

TEST_CASE("smuggling variants carry their markers") {
  auto p = default_params(AttackKind::HttpSmuggle);
  p.smuggle_variant = SmuggleVariant::cl_te;
  auto pl = plan(AttackKind::HttpSmuggle, p, 5);
  CHECK(count(pl, EventAction::request) == 5);
  for (const auto& e : pl.events) {
    if (e.action != EventAction::request) continue;
    CHECK(e.find("content_length") != nullptr);
    CHECK(*e.find("transfer_encoding") == "chunked");
  }
  p.smuggle_variant = SmuggleVariant::h2c_upgrade;
  pl = plan(AttackKind::HttpSmuggle, p, 5);
  for (const auto& e : pl.events) {
    if (e.action == EventAction::request) CHECK(*e.find("upgrade") == "h2c");
  }
  p.smuggle_variant = SmuggleVariant::te_cl;
  CHECK_NOTHROW(plan(AttackKind::HttpSmuggle, p, 5));
}

TEST_CASE("downgrade probe is not a traffic plan") {
  CHECK_THROWS_AS(plan(AttackKind::DowngradeProbe, default_params(AttackKind::DowngradeProbe), 5),
                  ParameterError);
}

TEST_CASE("event log round trip with truncation marker") {
  const auto pl = plan(AttackKind::QuicFlood, default_params(AttackKind::QuicFlood), 1);
  std::stringstream s;
  write_event_log(s, pl.events, true);
  const auto log = read_event_log(s);
  CHECK(log.truncated);
  REQUIRE(log.events.size() == pl.events.size());
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    CHECK(to_json_line(log.events[i]) == to_json_line(pl.events[i]));
  }
  CHECK_THROWS_AS(parse_event_line("{\"ts\":1}"), DecodeError);
  CHECK_THROWS_AS(parse_event_line("not json"), DecodeError);
}

TEST_CASE("live sink refuses without acknowledgment") {
  MockTransport t;
  CHECK_THROWS_AS(LiveSink(t, TargetAcknowledgment{false}), SafetyError);
  CHECK(t.calls.empty());
}

TEST_CASE("live sink replays a plan on the transport") {
  MockTransport t;
  LiveSink sink(t, TargetAcknowledgment{true}, LiveOptions{0.0, nullptr});
  auto p = default_params(AttackKind::Http3TablesStreams);
  p.parallelism = 3;
  const auto pl = run_attack(AttackKind::Http3TablesStreams, p, standalone_window(p, "10.0.0.4:443"),
                             sink);
  const auto executed = sink.executed();
  CHECK(executed.size() == pl.events.size());
  CHECK(sink.report().executed == pl.events.size());
  CHECK(sink.report().failed == 0);
  CHECK_FALSE(t.control.empty());
  for (const auto& c : t.control) {
    CHECK(c == wire::build_settings_frame(wire::kSettingsVariantLow));
  }
  // Per-worker order is preserved.
  std::map<std::size_t, double> last;
  for (const auto& e : executed) {
    CHECK(e.ts >= last[e.worker_id]);
    last[e.worker_id] = e.ts;
  }
}

TEST_CASE("live failures are recorded, not fatal") {
  MockTransport t;
  t.fail_datagrams = true;
  LiveSink sink(t, TargetAcknowledgment{true}, LiveOptions{0.0, nullptr});
  auto p = default_params(AttackKind::Fuzzing);
  p.duration = 0.1;
  run_attack(AttackKind::Fuzzing, p, standalone_window(p, "10.0.0.4:443"), sink);
  CHECK(sink.report().failed > 0);
  for (const auto& e : sink.executed()) CHECK(e.find("error") != nullptr);
}

TEST_CASE("stop flag truncates a live run") {
  MockTransport t;
  std::atomic<bool> stop{true};
  LiveSink sink(t, TargetAcknowledgment{true}, LiveOptions{0.0, &stop});
  auto p = default_params(AttackKind::Http3Flood);
  run_attack(AttackKind::Http3Flood, p, standalone_window(p, "10.0.0.4:443"), sink);
  CHECK(sink.report().truncated);
  CHECK(sink.executed().empty());
}

TEST_CASE("dry-run sink collects without a transport") {
  DryRunSink sink;
  auto p = default_params(AttackKind::QuicLoris);
  const auto pl = run_attack(AttackKind::QuicLoris, p, standalone_window(p, "10.0.0.4:443"), sink);
  CHECK(sink.events().size() == pl.events.size());
  CHECK(sink.mode() == SinkMode::dry_run);
}

TEST_CASE("POSIX transport sends UDP on loopback") {
  const int rx = ::socket(AF_INET, SOCK_DGRAM, 0);
  REQUIRE(rx >= 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  REQUIRE(::bind(rx, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
  socklen_t len = sizeof addr;
  ::getsockname(rx, reinterpret_cast<sockaddr*>(&addr), &len);
  const auto port = ntohs(addr.sin_port);

  PosixTransport t;
  const std::vector<std::uint8_t> payload{1, 2, 3, 4, 5};
  t.send_datagram(Endpoint{"127.0.0.1", port}, payload);
  pollfd pfd{rx, POLLIN, 0};
  REQUIRE(::poll(&pfd, 1, 2000) == 1);
  std::uint8_t buf[64];
  const auto n = ::recv(rx, buf, sizeof buf, 0);
  CHECK(n == 5);
  CHECK(std::vector<std::uint8_t>(buf, buf + 5) == payload);
  ::close(rx);

  ConnectionParams cp;
  cp.target = Endpoint{"127.0.0.1", port};
  cp.proto = "h3";
  CHECK_THROWS_AS(t.open_connection(cp), TransportError);
}

TEST_CASE("worker identities") {
  const auto id = default_attacker_identity();
  CHECK(worker_identity(AttackKind::Http3Flood, 0, id).host == id.attacker);
  std::set<std::string> loris_hosts;
  for (std::size_t i = 0; i < 13; ++i) {
    loris_hosts.insert(worker_identity(AttackKind::QuicLoris, i, id).host);
  }
  CHECK(loris_hosts.size() == 13);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(worker_identity(AttackKind::QuicFlood, i, id).role == WorkerRole::local_bot);
  }
  CHECK(worker_identity(AttackKind::HttpSmuggle, 4, id).host == id.attacker);
}
