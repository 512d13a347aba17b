#include "h3lab/campaign/schedule.hpp"

#include "h3lab/common/error.hpp"

namespace h3lab::campaign {

using engine::AttackKind;

std::string_view to_string(PhaseKind kind) noexcept {
  return kind == PhaseKind::attack ? "attack" : "normal";
}

const Phase* CampaignSchedule::phase_at(double ts) const noexcept {
  if (phases.empty() || ts < 0.0 || ts > total) return nullptr;
  for (const auto& p : phases) {
    if (ts >= p.start && ts < p.end) return &p;
  }
  return &phases.back();
}

const Phase* CampaignSchedule::attack_phase_at(double ts) const noexcept {
  for (const auto& p : phases) {
    if (p.kind == PhaseKind::attack && ts >= p.start && ts <= p.end) return &p;
  }
  return nullptr;
}

double CampaignSchedule::attack_seconds() const noexcept {
  double sum = 0.0;
  for (const auto& p : phases) {
    if (p.kind == PhaseKind::attack) sum += p.length();
  }
  return sum;
}

std::vector<ServerTarget> CampaignSchedule::servers() const {
  std::vector<ServerTarget> out;
  for (const auto& p : phases) {
    if (!p.target) continue;
    bool seen = false;
    for (const auto& s : out) seen = seen || s.name == p.target->name;
    if (!seen) out.push_back(*p.target);
  }
  return out;
}

namespace {

class Timeline {
 public:
  void normal(double length) { push(length, PhaseKind::normal, nullptr, std::nullopt, 0); }

  void rotation(const std::vector<ServerTarget>& servers, double slice,
                std::optional<wire::SettingsFrame> settings = std::nullopt, int cycle = 1) {
    for (const auto& s : servers) push(slice, PhaseKind::attack, &s, settings, cycle);
  }

  CampaignSchedule finish(AttackKind kind) {
    CampaignSchedule s;
    s.attack = kind;
    s.total = now_;
    s.phases = std::move(phases_);
    return s;
  }

 private:
  void push(double length, PhaseKind kind, const ServerTarget* target,
            std::optional<wire::SettingsFrame> settings, int cycle) {
    Phase p;
    p.start = now_;
    p.end = now_ + length;
    p.kind = kind;
    if (target != nullptr) p.target = *target;
    p.settings = settings;
    p.cycle = cycle;
    phases_.push_back(std::move(p));
    now_ += length;
  }

  double now_ = 0.0;
  std::vector<Phase> phases_;
};

}  // namespace

CampaignSchedule build_schedule(AttackKind attack, const std::vector<ServerTarget>& servers,
                                const ScheduleOptions& options) {
  validate_servers(servers);
  Timeline t;
  switch (attack) {
    case AttackKind::Http3Flood:
    case AttackKind::Http3Loris:
    case AttackKind::SlowRatePost:
    case AttackKind::QuicFlood:
    case AttackKind::QuicLoris:
    case AttackKind::QuicEnc:
    case AttackKind::Fuzzing:
      t.normal(240);
      t.rotation(servers, 60);
      break;
    case AttackKind::Http3TablesStreams: {
      const auto first = options.high_variant_first ? wire::kSettingsVariantHigh
                                                    : wire::kSettingsVariantLow;
      const auto second = options.high_variant_first ? wire::kSettingsVariantLow
                                                     : wire::kSettingsVariantHigh;
      t.normal(240);
      t.rotation(servers, 60, first, 1);
      t.normal(180);
      t.rotation(servers, 60, second, 2);
      t.normal(60);
      break;
    }
    case AttackKind::HttpSmuggle:
      t.normal(180);
      t.rotation(servers, 120);
      break;
    case AttackKind::Http2Concurrent:
    case AttackKind::Http2Pause:
      t.normal(180);
      t.rotation(servers, 30);
      break;
    case AttackKind::DowngradeProbe:
      throw ParameterError("downgrade-probe has no campaign schedule");
  }
  return t.finish(attack);
}

namespace {

nlohmann::json settings_json(const wire::SettingsFrame& s) {
  nlohmann::json j = nlohmann::json::object();
  if (s.max_table_capacity) j["max_table_capacity"] = *s.max_table_capacity;
  if (s.blocked_streams) j["blocked_streams"] = *s.blocked_streams;
  if (s.max_field_section_size) j["max_field_section_size"] = *s.max_field_section_size;
  return j;
}

wire::SettingsFrame settings_from(const nlohmann::json& j) {
  wire::SettingsFrame s;
  if (j.contains("max_table_capacity")) s.max_table_capacity = j["max_table_capacity"].get<std::uint64_t>();
  if (j.contains("blocked_streams")) s.blocked_streams = j["blocked_streams"].get<std::uint64_t>();
  if (j.contains("max_field_section_size")) {
    s.max_field_section_size = j["max_field_section_size"].get<std::uint64_t>();
  }
  return s;
}

}  // namespace

nlohmann::json to_json(const CampaignSchedule& schedule) {
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& p : schedule.phases) {
    nlohmann::json j{{"start", p.start}, {"end", p.end}, {"kind", to_string(p.kind)}};
    if (p.target) j["target"] = to_json(*p.target);
    if (p.settings) j["settings"] = settings_json(*p.settings);
    if (p.cycle != 0) j["cycle"] = p.cycle;
    phases.push_back(std::move(j));
  }
  return {{"attack", engine::to_string(schedule.attack)},
          {"total", schedule.total},
          {"phases", std::move(phases)}};
}

CampaignSchedule schedule_from_json(const nlohmann::json& j) {
  try {
    CampaignSchedule s;
    const auto kind = engine::parse_attack_kind(j.at("attack").get<std::string>());
    if (!kind) throw ParameterError("unknown attack kind in schedule");
    s.attack = *kind;
    s.total = j.at("total").get<double>();
    for (const auto& pj : j.at("phases")) {
      Phase p;
      p.start = pj.at("start").get<double>();
      p.end = pj.at("end").get<double>();
      p.kind = pj.at("kind").get<std::string>() == "attack" ? PhaseKind::attack : PhaseKind::normal;
      if (pj.contains("target")) p.target = server_from_json(pj["target"]);
      if (pj.contains("settings")) p.settings = settings_from(pj["settings"]);
      p.cycle = pj.value("cycle", 0);
      s.phases.push_back(std::move(p));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad schedule: ") + e.what());
  }
}

}  // namespace h3lab::campaign
