#pragma once

#include <string>

#include "h3lab/engine/identity.hpp"
#include "h3lab/engine/plan.hpp"
#include "h3lab/engine/sink.hpp"

namespace h3lab::engine {

/// [0, params.duration) against `target`.
PlanWindow standalone_window(const AttackParams& params, std::string target);

/// Deterministic plan for one attack over one window: a pure function of
/// (kind, params, window, identity). Per-worker timestamps are
/// non-decreasing. Throws ParameterError for invalid params, a missing
/// SETTINGS frame on the tables/streams attack, or DowngradeProbe (which is
/// a probe, not a traffic plan; see downgrade_probe()).
AttackPlan build_plan(AttackKind kind, const AttackParams& params, const PlanWindow& window,
                      const AttackerIdentity& identity = default_attacker_identity());

/// build_plan() then hand the plan to `sink`.
AttackPlan run_attack(AttackKind kind, const AttackParams& params, const PlanWindow& window,
                      TrafficSink& sink,
                      const AttackerIdentity& identity = default_attacker_identity());

// One entry point per attack.
AttackPlan plan_http3_flood(const AttackParams& params, const PlanWindow& window, TrafficSink& sink);
AttackPlan plan_http3_loris(const AttackParams& params, const PlanWindow& window, TrafficSink& sink);
AttackPlan plan_slow_rate_post(const AttackParams& params, const PlanWindow& window,
                               TrafficSink& sink);
AttackPlan plan_tables_streams(const AttackParams& params, const PlanWindow& window,
                               TrafficSink& sink);
AttackPlan plan_quic_flood(const AttackParams& params, const PlanWindow& window, TrafficSink& sink);
AttackPlan plan_quic_loris(const AttackParams& params, const PlanWindow& window, TrafficSink& sink);
AttackPlan plan_quic_enc(const AttackParams& params, const PlanWindow& window, TrafficSink& sink);
AttackPlan plan_fuzzing(const AttackParams& params, const PlanWindow& window, TrafficSink& sink);
AttackPlan plan_http_smuggle(const AttackParams& params, const PlanWindow& window,
                             TrafficSink& sink);
AttackPlan plan_http2_concurrent(const AttackParams& params, const PlanWindow& window,
                                 TrafficSink& sink);
AttackPlan plan_http2_pause(const AttackParams& params, const PlanWindow& window,
                            TrafficSink& sink);

}  // namespace h3lab::engine
