#include "h3lab/engine/sink.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <thread>

#include "h3lab/common/error.hpp"

namespace h3lab::engine {

namespace {

using Clock = std::chrono::steady_clock;

struct WorkerState {
  std::optional<ConnectionId> conn;
  std::optional<StreamId> stream;
};

ConnectionParams connection_params(const AttackEvent& ev) {
  ConnectionParams p;
  p.target = Endpoint::parse(ev.target);
  if (const auto* proto = ev.find("proto")) p.proto = *proto;
  if (p.proto == "quic") p.proto = "h3";
  if (const auto* mcs = ev.find("h2.max_concurrent_streams")) {
    p.max_concurrent_streams = std::stoull(*mcs);
  }
  if (ev.payload && ev.payload->settings) p.settings = ev.payload->settings;
  return p;
}

void perform(const AttackEvent& ev, Transport& transport, WorkerState& st,
             const std::optional<wire::SettingsFrame>& plan_settings) {
  const EventPayload empty;
  const EventPayload& payload = ev.payload ? *ev.payload : empty;
  auto ensure_connection = [&] {
    if (!st.conn) {
      auto params = connection_params(ev);
      if (!params.settings) params.settings = plan_settings;
      st.conn = transport.open_connection(params);
      st.stream.reset();
    }
  };

  switch (ev.action) {
    case EventAction::connect: {
      if (st.conn) transport.close(*st.conn);
      st.conn.reset();
      ensure_connection();
      break;
    }
    case EventAction::request: {
      ensure_connection();
      if (!payload.control.empty()) {
        transport.write_control(*st.conn, payload.control);
        break;
      }
      const auto* stream = ev.find("stream");
      const bool continuation = stream != nullptr && *stream == "continue";
      if (!continuation || !st.stream) {
        st.stream = transport.open_stream(*st.conn, payload.head ? &*payload.head : nullptr);
      }
      if (!payload.body.empty()) transport.write(*st.conn, *st.stream, payload.body);
      break;
    }
    case EventAction::send_datagram:
      transport.send_datagram(Endpoint::parse(ev.target), payload.body);
      break;
    case EventAction::pause:
      ensure_connection();
      transport.pause(*st.conn);
      break;
    case EventAction::resume:
      ensure_connection();
      transport.resume(*st.conn);
      break;
    case EventAction::close:
    case EventAction::timeout:
      if (st.conn) transport.close(*st.conn);
      st.conn.reset();
      st.stream.reset();
      break;
  }
}

}  // namespace

ExecutionReport execute_live(const AttackPlan& plan, Transport& transport,
                             const LiveOptions& options,
                             const std::function<void(const AttackEvent&)>& record) {
  std::map<std::size_t, std::vector<const AttackEvent*>> by_worker;
  for (const auto& ev : plan.events) by_worker[ev.worker_id].push_back(&ev);

  std::mutex report_mutex;
  ExecutionReport report;
  const auto t0 = Clock::now();
  const double origin = plan.window.start;

  auto run_worker = [&](const std::vector<const AttackEvent*>& events) {
    WorkerState st;
    std::size_t done = 0, failed = 0;
    bool truncated = false;
    for (const AttackEvent* ev : events) {
      if (options.stop && options.stop->load()) {
        truncated = true;
        break;
      }
      if (options.time_scale > 0.0) {
        const auto due = t0 + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>((ev->ts - origin) *
                                                                options.time_scale));
        // Sleep in short slices so a stop request is honoured promptly.
        while (Clock::now() < due) {
          if (options.stop && options.stop->load()) break;
          std::this_thread::sleep_until(std::min(due, Clock::now() + std::chrono::milliseconds(50)));
        }
        if (options.stop && options.stop->load()) {
          truncated = true;
          break;
        }
      }
      AttackEvent out = *ev;
      try {
        perform(*ev, transport, st, plan.params.settings);
        ++done;
      } catch (const Error& e) {
        out.detail["error"] = e.what();
        st.conn.reset();
        st.stream.reset();
        ++failed;
      }
      record(out);
    }
    if (st.conn) {
      try {
        transport.close(*st.conn);
      } catch (const Error&) {
      }
    }
    std::lock_guard lock(report_mutex);
    report.executed += done;
    report.failed += failed;
    report.truncated = report.truncated || truncated;
  };

  {
    std::vector<std::jthread> workers;
    workers.reserve(by_worker.size());
    for (const auto& [id, events] : by_worker) workers.emplace_back(run_worker, std::cref(events));
  }
  return report;
}

}  // namespace h3lab::engine
