#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "h3lab/campaign/server.hpp"
#include "h3lab/capture/label.hpp"

namespace h3lab::capture {

struct ServerStats {
  std::string server;
  std::uint64_t total = 0;
  std::uint64_t malicious = 0;
  double pct_of_total = 0.0;  // 2 decimals
};

struct TrafficStats {
  std::uint64_t normal_count = 0;
  std::uint64_t malicious_count = 0;
  std::vector<ServerStats> per_server;
  /// Absent when there is no normal traffic.
  std::optional<double> pct_malicious_to_normal;
};

/// 100 * num / den rounded half-up to 2 decimals; 0 when den is 0.
double percent_2dp(std::uint64_t num, std::uint64_t den);

/// Per-server rows follow `servers` order; packets not touching any server
/// count towards the totals only.
TrafficStats compute_stats(const std::vector<LabeledPacket>& packets,
                           const std::vector<campaign::ServerTarget>& servers);

struct ServerCounts {
  std::string server;
  std::uint64_t normal = 0;
  std::uint64_t malicious = 0;
};

/// Stats from pre-aggregated counts.
TrafficStats stats_from_counts(const std::vector<ServerCounts>& counts);

/// Reads a counts CSV with header "server,normal,malicious".
std::vector<ServerCounts> read_counts_csv(std::istream& in);

/// Plain-text report, percentages with 2 decimals.
std::string render_stats(const TrafficStats& stats);

void write_stats_csv(std::ostream& out, const TrafficStats& stats);

}  // namespace h3lab::capture
