#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "h3lab/campaign/server.hpp"
#include "h3lab/engine/attack_event.hpp"

namespace h3lab::campaign {

/// Background users browsing the test servers: pick a random server, load
/// the landing page, wait `page_wait`, sleep uniform [sleep_min, sleep_max],
/// repeat.
struct BenignClientModel {
  std::size_t client_count = 13;
  double page_wait = 5.0;
  double sleep_min = 1.0;
  double sleep_max = 5.0;
  std::uint64_t seed = 0;
  /// Chance of choosing HTTP/3 when the server offers it; otherwise the
  /// client falls back to HTTP/2, then HTTP/1.1.
  double h3_preference = 0.85;
  /// When set, every client switches to a new source address from this
  /// time on (DSL routers renewing their public address).
  std::optional<double> address_remap_at;
  /// Resolver the clients query before each visit.
  std::string resolver = "10.0.0.2:53";
};

/// Source address of client `index` before (or after) the remap.
std::string benign_address(std::size_t index, bool remapped = false);

/// Every address any client of `model` may use.
std::vector<std::string> benign_addresses(const BenignClientModel& model);

/// Deterministic benign events over [0, horizon), ordered by ts.
/// Visit starts are spaced by page_wait + sleep, i.e. within [6, 10] s by
/// default.
std::vector<engine::AttackEvent> benign_traffic(const BenignClientModel& model, double horizon,
                                                const std::vector<ServerTarget>& servers);

}  // namespace h3lab::campaign
