#include "h3lab/campaign/server.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "h3lab/common/error.hpp"
#include "h3lab/common/net.hpp"

namespace h3lab::campaign {

using engine::Capabilities;
using engine::HttpVersion;

std::vector<ServerTarget> default_servers() {
  const Capabilities h3_h1{HttpVersion::h1_1, HttpVersion::h3};
  const Capabilities all = Capabilities::all();
  return {
      {"OpenLiteSpeed", "10.0.0.4:443", h3_h1},
      {"Caddy", "10.0.0.5:443", all},
      {"NGINX", "10.2.0.4:443", h3_h1},
      {"IIS", "10.0.0.6:443", all},
      {"Cloudflare", "10.1.0.4:443", h3_h1},
      {"H2O", "10.0.0.7:443", all},
  };
}

void validate_servers(const std::vector<ServerTarget>& servers) {
  if (servers.empty()) throw ParameterError("at least one server is required");
  std::set<std::string> names;
  for (const auto& s : servers) {
    if (s.name.empty()) throw ParameterError("server name must not be empty");
    if (!names.insert(s.name).second) throw ParameterError("duplicate server name: " + s.name);
    Endpoint::parse(s.address);
  }
}

nlohmann::json to_json(const ServerTarget& server) {
  return {{"name", server.name},
          {"address", server.address},
          {"capabilities", server.capabilities.to_string()}};
}

ServerTarget server_from_json(const nlohmann::json& j) {
  try {
    ServerTarget s;
    s.name = j.at("name").get<std::string>();
    s.address = j.at("address").get<std::string>();
    const auto& caps = j.contains("capabilities") ? j.at("capabilities") : nlohmann::json("h3");
    if (caps.is_array()) {
      std::string joined;
      for (const auto& c : caps) joined += (joined.empty() ? "" : ",") + c.get<std::string>();
      s.capabilities = Capabilities::parse(joined);
    } else {
      s.capabilities = Capabilities::parse(caps.get<std::string>());
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad server entry: ") + e.what());
  }
}

std::vector<ServerTarget> select_servers(const std::vector<ServerTarget>& pool,
                                         const std::vector<std::string>& names) {
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
  };
  std::vector<ServerTarget> out;
  for (const auto& name : names) {
    auto it = std::find_if(pool.begin(), pool.end(),
                           [&](const ServerTarget& s) { return lower(s.name) == lower(name); });
    if (it == pool.end()) throw ParameterError("unknown server: " + name);
    out.push_back(*it);
  }
  return out;
}

}  // namespace h3lab::campaign
