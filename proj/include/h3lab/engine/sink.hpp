#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <vector>

#include "h3lab/engine/plan.hpp"
#include "h3lab/engine/transport.hpp"

namespace h3lab::engine {

enum class SinkMode { dry_run, live };

/// Destination of attack plans. Dry-run sinks collect the planned events
/// under the simulated clock; live sinks execute them against a transport.
/// deliver() may be called from several threads.
class TrafficSink {
 public:
  virtual ~TrafficSink() = default;
  virtual SinkMode mode() const noexcept = 0;
  virtual void deliver(const AttackPlan& plan) = 0;
  /// Logs events that already happened elsewhere (probe results) without
  /// executing them.
  virtual void record(const std::vector<AttackEvent>& events) = 0;
};

class DryRunSink final : public TrafficSink {
 public:
  SinkMode mode() const noexcept override { return SinkMode::dry_run; }
  void deliver(const AttackPlan& plan) override;
  void record(const std::vector<AttackEvent>& events) override;

  std::vector<AttackEvent> events() const;

 private:
  mutable std::mutex mutex_;
  std::vector<AttackEvent> events_;
};

/// The operator's explicit confirmation that they own or are authorised to
/// test the target (`--yes-i-own-this-target`).
struct TargetAcknowledgment {
  bool acknowledged = false;
};

struct LiveOptions {
  /// Wall-clock seconds per simulated second; 0 runs without sleeping.
  double time_scale = 1.0;
  /// Set asynchronously (e.g. from SIGINT) to stop all workers.
  const std::atomic<bool>* stop = nullptr;
};

struct ExecutionReport {
  std::size_t executed = 0;
  std::size_t failed = 0;
  bool truncated = false;
};

class LiveSink final : public TrafficSink {
 public:
  /// Throws SafetyError unless `ack.acknowledged`.
  LiveSink(Transport& transport, TargetAcknowledgment ack, LiveOptions options = {});

  SinkMode mode() const noexcept override { return SinkMode::live; }
  void deliver(const AttackPlan& plan) override;
  void record(const std::vector<AttackEvent>& events) override;

  /// Events actually executed, in completion order; per worker ordering is
  /// preserved. Failed actions carry detail["error"].
  std::vector<AttackEvent> executed() const;
  ExecutionReport report() const;

 private:
  Transport& transport_;
  LiveOptions options_;
  mutable std::mutex mutex_;
  std::vector<AttackEvent> executed_;
  ExecutionReport report_;
};

/// Replays `plan` against `transport`: one thread per worker, each
/// sleeping until its event's simulated time. `record` is called once per
/// event (serialised by the caller's lock if needed).
ExecutionReport execute_live(const AttackPlan& plan, Transport& transport,
                             const LiveOptions& options,
                             const std::function<void(const AttackEvent&)>& record);

}  // namespace h3lab::engine
