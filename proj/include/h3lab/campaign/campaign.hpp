#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "h3lab/campaign/benign.hpp"
#include "h3lab/campaign/schedule.hpp"
#include "h3lab/engine/identity.hpp"
#include "h3lab/engine/sink.hpp"

namespace h3lab::campaign {

inline constexpr std::string_view kNormalLabel = "Normal";

/// Everything needed to label a capture of the campaign after the fact.
struct CampaignManifest {
  CampaignSchedule schedule;
  std::uint64_t seed = 0;
  std::string mode = "dry-run";
  engine::AttackerIdentity identity = engine::default_attacker_identity();
  BenignClientModel benign;

  std::set<std::string> attacker_addresses() const;

  nlohmann::json to_json() const;
  static CampaignManifest from_json(const nlohmann::json& j);
};

/// Ground truth: the attack's name when either endpoint is an attacker
/// address and ts lies in an attack phase, "Normal" otherwise.
std::string ground_truth(const CampaignSchedule& schedule,
                         const std::set<std::string>& attacker_addresses, std::string_view src,
                         std::string_view dst, double ts);

struct CampaignOptions {
  std::uint64_t seed = 0;
  /// Overrides the per-kind defaults; seed, duration, target capabilities
  /// and SETTINGS are still set per phase.
  std::optional<engine::AttackParams> params;
  engine::AttackerIdentity identity = engine::default_attacker_identity();
};

struct CampaignLog {
  /// Benign and attack events sorted by ts, each tagged with detail
  /// "phase" (normal|attack) and "label" (Normal or the attack name).
  std::vector<engine::AttackEvent> events;
  CampaignManifest manifest;

  /// Events touching each server (by name); the rest under "other".
  std::map<std::string, std::vector<engine::AttackEvent>> per_server() const;

  /// Writes events.jsonl and manifest.json into `dir`.
  void write(const std::filesystem::path& dir) const;
};

/// Runs the attack in every attack phase and benign traffic over the whole
/// horizon. Live sinks execute the attack phases only; simulated benign
/// users exist only in dry runs.
CampaignLog run_campaign(const CampaignSchedule& schedule, const BenignClientModel& model,
                         engine::TrafficSink& sink, const CampaignOptions& options = {});

/// Campaign configuration file (JSON): servers, attack, seed, mode, and
/// optional benign/tables settings.
struct CampaignConfig {
  std::vector<ServerTarget> servers = default_servers();
  std::optional<engine::AttackKind> attack;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::size_t> benign_clients;
  bool high_variant_first = true;
};

CampaignConfig parse_campaign_config(const nlohmann::json& j);
CampaignConfig load_campaign_config(const std::filesystem::path& path);

}  // namespace h3lab::campaign
