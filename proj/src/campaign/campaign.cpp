#include "h3lab/campaign/campaign.hpp"

#include <algorithm>
#include <fstream>

#include "h3lab/common/error.hpp"
#include "h3lab/common/net.hpp"
#include "h3lab/engine/planner.hpp"

namespace h3lab::campaign {

using engine::AttackEvent;

std::set<std::string> CampaignManifest::attacker_addresses() const {
  const auto all = identity.all_addresses();
  return {all.begin(), all.end()};
}

nlohmann::json CampaignManifest::to_json() const {
  nlohmann::json benign_json{{"client_count", benign.client_count},
                             {"page_wait", benign.page_wait},
                             {"sleep_range", {benign.sleep_min, benign.sleep_max}},
                             {"seed", benign.seed},
                             {"resolver", benign.resolver},
                             {"addresses", benign_addresses(benign)}};
  if (benign.address_remap_at) benign_json["address_remap_at"] = *benign.address_remap_at;
  return {{"schedule", campaign::to_json(schedule)},
          {"seed", seed},
          {"mode", mode},
          {"attacker",
           {{"attacker", identity.attacker},
            {"local_bots", identity.local_bots},
            {"remote_bots", identity.remote_bots}}},
          {"benign", std::move(benign_json)}};
}

CampaignManifest CampaignManifest::from_json(const nlohmann::json& j) {
  try {
    CampaignManifest m;
    m.schedule = schedule_from_json(j.at("schedule"));
    m.seed = j.value("seed", std::uint64_t{0});
    m.mode = j.value("mode", std::string("dry-run"));
    if (j.contains("attacker")) {
      const auto& a = j["attacker"];
      m.identity.attacker = a.at("attacker").get<std::string>();
      m.identity.local_bots = a.value("local_bots", std::vector<std::string>{});
      m.identity.remote_bots = a.value("remote_bots", std::vector<std::string>{});
    }
    if (j.contains("benign")) {
      const auto& b = j["benign"];
      m.benign.client_count = b.value("client_count", m.benign.client_count);
      m.benign.page_wait = b.value("page_wait", m.benign.page_wait);
      if (b.contains("sleep_range")) {
        m.benign.sleep_min = b["sleep_range"].at(0).get<double>();
        m.benign.sleep_max = b["sleep_range"].at(1).get<double>();
      }
      m.benign.seed = b.value("seed", m.benign.seed);
      m.benign.resolver = b.value("resolver", m.benign.resolver);
      if (b.contains("address_remap_at")) m.benign.address_remap_at = b["address_remap_at"].get<double>();
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad manifest: ") + e.what());
  }
}

std::string ground_truth(const CampaignSchedule& schedule,
                         const std::set<std::string>& attacker_addresses, std::string_view src,
                         std::string_view dst, double ts) {
  const bool attacker = attacker_addresses.contains(std::string(src)) ||
                        attacker_addresses.contains(std::string(dst));
  if (attacker && schedule.attack_phase_at(ts) != nullptr) {
    return std::string(engine::to_string(schedule.attack));
  }
  return std::string(kNormalLabel);
}

namespace {

std::string host_of(const std::string& address) {
  const auto colon = address.rfind(':');
  return colon == std::string::npos ? address : address.substr(0, colon);
}

}  // namespace

std::map<std::string, std::vector<AttackEvent>> CampaignLog::per_server() const {
  std::map<std::string, std::vector<AttackEvent>> out;
  const auto servers = manifest.schedule.servers();
  for (const auto& s : servers) out[s.name];
  for (const auto& ev : events) {
    const auto it = std::find_if(servers.begin(), servers.end(), [&](const ServerTarget& s) {
      return host_of(s.address) == host_of(ev.target);
    });
    out[it == servers.end() ? "other" : it->name].push_back(ev);
  }
  return out;
}

void CampaignLog::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "events.jsonl", std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / "events.jsonl").string());
    engine::write_event_log(out, events);
  }
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / "manifest.json").string());
  out << manifest.to_json().dump(2) << '\n';
}

CampaignLog run_campaign(const CampaignSchedule& schedule, const BenignClientModel& model,
                         engine::TrafficSink& sink, const CampaignOptions& options) {
  CampaignLog log;
  log.manifest.schedule = schedule;
  log.manifest.seed = options.seed;
  log.manifest.mode = sink.mode() == engine::SinkMode::live ? "live" : "dry-run";
  log.manifest.identity = options.identity;
  log.manifest.benign = model;

  std::vector<AttackEvent> events;
  for (const auto& phase : schedule.phases) {
    if (phase.kind != PhaseKind::attack || !phase.target) continue;
    engine::AttackParams params =
        options.params ? *options.params : engine::default_params(schedule.attack);
    params.seed = options.seed;
    params.duration = phase.length();
    params.target_capabilities = phase.target->capabilities;
    if (phase.settings) params.settings = phase.settings;
    const engine::PlanWindow window{phase.start, phase.end, phase.target->address};
    auto plan = engine::build_plan(schedule.attack, params, window, options.identity);
    sink.deliver(plan);
    events.insert(events.end(), plan.events.begin(), plan.events.end());
  }
  if (sink.mode() == engine::SinkMode::dry_run) {
    auto benign = benign_traffic(model, schedule.total, schedule.servers());
    sink.record(benign);
    events.insert(events.end(), benign.begin(), benign.end());
  }

  const auto attackers = log.manifest.attacker_addresses();
  for (auto& ev : events) {
    const auto* src = ev.find("src");
    const std::string src_addr = src != nullptr ? *src : std::string();
    ev.detail["phase"] =
        std::string(to_string(schedule.attack_phase_at(ev.ts) ? PhaseKind::attack
                                                              : PhaseKind::normal));
    ev.detail["label"] = ground_truth(schedule, attackers, src_addr, host_of(ev.target), ev.ts);
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const AttackEvent& a, const AttackEvent& b) { return a.ts < b.ts; });
  log.events = std::move(events);
  return log;
}

CampaignConfig parse_campaign_config(const nlohmann::json& j) {
  try {
    CampaignConfig c;
    if (j.contains("servers")) {
      c.servers.clear();
      for (const auto& s : j["servers"]) c.servers.push_back(server_from_json(s));
    }
    validate_servers(c.servers);
    if (j.contains("attack")) {
      c.attack = engine::parse_attack_kind(j["attack"].get<std::string>());
      if (!c.attack) throw ParameterError("unknown attack kind: " + j["attack"].get<std::string>());
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("mode")) c.mode = j["mode"].get<std::string>();
    if (j.contains("benign_clients")) c.benign_clients = j["benign_clients"].get<std::size_t>();
    c.high_variant_first = j.value("high_variant_first", true);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad campaign config: ") + e.what());
  }
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config " + path.string());
  try {
    return parse_campaign_config(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("config is not JSON: ") + e.what());
  }
}

}  // namespace h3lab::campaign
