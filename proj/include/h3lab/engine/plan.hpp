#pragma once

#include <map>
#include <string>
#include <vector>

#include "h3lab/engine/attack_event.hpp"
#include "h3lab/engine/attack_kind.hpp"
#include "h3lab/engine/attack_params.hpp"

namespace h3lab::engine {

/// Simulated-time window an attack runs in. Connections and requests
/// start in [start, end); teardown events (close/timeout) may land on
/// `end` itself.
struct PlanWindow {
  double start = 0.0;
  double end = 0.0;
  std::string target;  // host:port
};

struct AttackPlan {
  AttackKind kind = AttackKind::Http3Flood;
  AttackParams params;
  PlanWindow window;
  /// Plan-level facts: cve_trigger, fallback, max_total_connections, ...
  std::map<std::string, std::string> metadata;
  std::vector<AttackEvent> events;

  bool cve_trigger() const {
    auto it = metadata.find("cve_trigger");
    return it != metadata.end() && it->second == "true";
  }
};

}  // namespace h3lab::engine
