#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "h3lab/campaign/server.hpp"
#include "h3lab/engine/attack_kind.hpp"
#include "h3lab/wire/settings_frame.hpp"

namespace h3lab::campaign {

enum class PhaseKind { normal, attack };

std::string_view to_string(PhaseKind kind) noexcept;

struct Phase {
  double start = 0.0;
  double end = 0.0;
  PhaseKind kind = PhaseKind::normal;
  std::optional<ServerTarget> target;  // attack phases only
  /// Tampered SETTINGS for the tables/streams attack cycles.
  std::optional<wire::SettingsFrame> settings;
  /// 1-based attack cycle (tables/streams has two); 0 for normal phases.
  int cycle = 0;

  double length() const noexcept { return end - start; }
};

struct CampaignSchedule {
  engine::AttackKind attack = engine::AttackKind::Http3Flood;
  double total = 0.0;
  std::vector<Phase> phases;  // contiguous, covering [0, total)

  /// Phase containing ts (half-open), the last phase also owning `total`.
  /// nullptr outside [0, total].
  const Phase* phase_at(double ts) const noexcept;

  /// Attack phase whose closed interval [start, end] holds ts. Connection
  /// teardown is allowed to land on the window end, so ground truth treats
  /// attack windows as closed.
  const Phase* attack_phase_at(double ts) const noexcept;

  double attack_seconds() const noexcept;
  std::vector<ServerTarget> servers() const;
};

struct ScheduleOptions {
  /// Tables/streams: use the high variant in cycle 1 and the low one in
  /// cycle 2 (false swaps them).
  bool high_variant_first = true;
};

/// Campaign timeline for one attack over `servers` in rotation order.
/// Throws ParameterError for DowngradeProbe or an empty server list.
CampaignSchedule build_schedule(engine::AttackKind attack, const std::vector<ServerTarget>& servers,
                                const ScheduleOptions& options = {});

nlohmann::json to_json(const CampaignSchedule& schedule);
CampaignSchedule schedule_from_json(const nlohmann::json& j);

}  // namespace h3lab::campaign
