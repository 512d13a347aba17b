#include "h3lab/engine/sink.hpp"

#include "h3lab/common/error.hpp"

namespace h3lab::engine {

void DryRunSink::deliver(const AttackPlan& plan) {
  std::lock_guard lock(mutex_);
  events_.insert(events_.end(), plan.events.begin(), plan.events.end());
}

void DryRunSink::record(const std::vector<AttackEvent>& events) {
  std::lock_guard lock(mutex_);
  events_.insert(events_.end(), events.begin(), events.end());
}

std::vector<AttackEvent> DryRunSink::events() const {
  std::lock_guard lock(mutex_);
  return events_;
}

LiveSink::LiveSink(Transport& transport, TargetAcknowledgment ack, LiveOptions options)
    : transport_(transport), options_(options) {
  if (!ack.acknowledged) {
    throw SafetyError(
        "live mode requires --yes-i-own-this-target: only attack systems you own or are "
        "authorised to test");
  }
}

void LiveSink::deliver(const AttackPlan& plan) {
  const auto r = execute_live(plan, transport_, options_, [this](const AttackEvent& ev) {
    std::lock_guard lock(mutex_);
    executed_.push_back(ev);
  });
  std::lock_guard lock(mutex_);
  report_.executed += r.executed;
  report_.failed += r.failed;
  report_.truncated = report_.truncated || r.truncated;
}

void LiveSink::record(const std::vector<AttackEvent>& events) {
  std::lock_guard lock(mutex_);
  executed_.insert(executed_.end(), events.begin(), events.end());
}

std::vector<AttackEvent> LiveSink::executed() const {
  std::lock_guard lock(mutex_);
  return executed_;
}

ExecutionReport LiveSink::report() const {
  std::lock_guard lock(mutex_);
  return report_;
}

}  // namespace h3lab::engine
