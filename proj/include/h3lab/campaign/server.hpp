#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "h3lab/engine/protocol.hpp"

namespace h3lab::campaign {

struct ServerTarget {
  std::string name;
  std::string address;  // host:port
  engine::Capabilities capabilities;

  friend bool operator==(const ServerTarget&, const ServerTarget&) = default;
};

/// OpenLiteSpeed, Caddy, NGINX, IIS, Cloudflare, H2O: the rotation order.
std::vector<ServerTarget> default_servers();

/// Throws ParameterError on an empty list, duplicate names or bad addresses.
void validate_servers(const std::vector<ServerTarget>& servers);

nlohmann::json to_json(const ServerTarget& server);
ServerTarget server_from_json(const nlohmann::json& j);

/// Selects servers by name (case-insensitive) from `pool`, in the given order.
std::vector<ServerTarget> select_servers(const std::vector<ServerTarget>& pool,
                                         const std::vector<std::string>& names);

}  // namespace h3lab::campaign
