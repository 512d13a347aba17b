#include "h3lab/campaign/benign.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "h3lab/common/error.hpp"
#include "h3lab/common/net.hpp"
#include "h3lab/common/rng.hpp"
#include "h3lab/engine/packets.hpp"

namespace h3lab::campaign {

using namespace engine;

std::string benign_address(std::size_t index, bool remapped) {
  const std::size_t net = 11 + index % 3;
  const std::size_t host = (remapped ? 100 : 10) + index;
  return "10." + std::to_string(net) + ".0." + std::to_string(host);
}

std::vector<std::string> benign_addresses(const BenignClientModel& model) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < model.client_count; ++i) {
    out.push_back(benign_address(i));
    if (model.address_remap_at) out.push_back(benign_address(i, true));
  }
  return out;
}

namespace {

std::string site_name(const ServerTarget& server) {
  std::string name;
  for (char c : server.name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return name + ".lab";
}

}  // namespace

std::vector<AttackEvent> benign_traffic(const BenignClientModel& model, double horizon,
                                        const std::vector<ServerTarget>& servers) {
  if (model.sleep_min < 0.0 || model.sleep_max < model.sleep_min || model.page_wait < 0.0) {
    throw ParameterError("invalid benign timing");
  }
  std::vector<AttackEvent> events;
  if (horizon <= 0.0 || model.client_count == 0) return events;
  validate_servers(servers);
  for (std::size_t i = 0; i < model.client_count; ++i) {
    SplitMix64 rng(derive_seed(model.seed, "benign", i));
    const ClientProfile& profile =
        client_profile(i % 2 == 0 ? ClientKind::chrome : ClientKind::firefox);
    Flow flow;
    flow.worker_id = i;
    flow.role = "benign";
    flow.client = &profile;
    double t = rng.uniform(0.0, model.sleep_min);
    std::uint16_t dns_id = static_cast<std::uint16_t>(rng.below(65536));
    while (t < horizon) {
      const bool remapped = model.address_remap_at && t >= *model.address_remap_at;
      flow.src = benign_address(i, remapped);
      const ServerTarget& server = servers[rng.below(servers.size())];
      const std::size_t before = events.size();

      Flow dns = flow;
      dns.target = model.resolver;
      dns.sport = static_cast<std::uint16_t>(32768 + rng.below(28232));
      events.push_back(dns_query(dns, t, site_name(server), dns_id++));

      flow.target = server.address;
      flow.sport = static_cast<std::uint16_t>(32768 + rng.below(28232));
      HttpVersion version = HttpVersion::h1_1;
      if (server.capabilities.has(HttpVersion::h3) && rng.chance(model.h3_preference)) {
        version = HttpVersion::h3;
      } else if (server.capabilities.has(HttpVersion::h2)) {
        version = HttpVersion::h2;
      }
      const std::string authority = Endpoint::parse(server.address).host;
      RequestHead head{"GET", "/", authority, {{"user-agent", std::string(profile.user_agent)}}};
      const double t_conn = std::min(t + 0.01, std::nextafter(horizon, 0.0));
      const double t_req = std::min(t + 0.02, std::nextafter(horizon, 0.0));
      const double t_done = t + model.page_wait;
      switch (version) {
        case HttpVersion::h3:
          events.push_back(quic_initial(flow, t_conn, rng));
          events.push_back(h3_request(flow, t_req, head, {}, {}, rng));
          if (t_done <= horizon) {
            events.push_back(quic_close(flow, t_done, EventAction::close, rng));
          }
          break;
        case HttpVersion::h2:
          events.push_back(tcp_syn(flow, t_conn, version));
          events.push_back(h2_request(flow, t_req, head, {}, {}));
          if (t_done <= horizon) {
            events.push_back(tcp_teardown(flow, t_done, EventAction::close, version));
          }
          break;
        case HttpVersion::h1_1:
          events.push_back(tcp_syn(flow, t_conn, version));
          events.push_back(h1_request(flow, t_req, render_http1_head(head), 0, {{"method", "GET"}}));
          if (t_done <= horizon) {
            events.push_back(tcp_teardown(flow, t_done, EventAction::close, version));
          }
          break;
      }
      for (std::size_t k = before; k < events.size(); ++k) {
        events[k].detail["role"] = "benign";
        if (remapped) events[k].detail["remapped"] = "true";
      }
      t += model.page_wait + rng.uniform(model.sleep_min, model.sleep_max);
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const AttackEvent& a, const AttackEvent& b) { return a.ts < b.ts; });
  return events;
}

}  // namespace h3lab::campaign
