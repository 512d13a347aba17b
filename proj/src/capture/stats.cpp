#include "h3lab/capture/stats.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "h3lab/common/error.hpp"
#include "h3lab/common/net.hpp"
#include "h3lab/common/text.hpp"

namespace h3lab::capture {

double percent_2dp(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return 0.0;
  return round_half_up(100.0 * static_cast<double>(num) / static_cast<double>(den), 2);
}

namespace {

TrafficStats finish(TrafficStats s) {
  if (s.normal_count > 0) s.pct_malicious_to_normal = percent_2dp(s.malicious_count, s.normal_count);
  for (auto& row : s.per_server) row.pct_of_total = percent_2dp(row.malicious, row.total);
  return s;
}

}  // namespace

TrafficStats compute_stats(const std::vector<LabeledPacket>& packets,
                           const std::vector<campaign::ServerTarget>& servers) {
  TrafficStats s;
  std::vector<std::string> hosts;
  for (const auto& srv : servers) {
    s.per_server.push_back({srv.name, 0, 0, 0.0});
    hosts.push_back(Endpoint::parse(srv.address).host);
  }
  for (const auto& p : packets) {
    const bool malicious = p.cls != features::ClassLabel::Normal;
    if (malicious) {
      ++s.malicious_count;
    } else {
      ++s.normal_count;
    }
    for (std::size_t i = 0; i < hosts.size(); ++i) {
      if (p.record.dst == hosts[i] || p.record.src == hosts[i]) {
        ++s.per_server[i].total;
        if (malicious) ++s.per_server[i].malicious;
        break;
      }
    }
  }
  return finish(std::move(s));
}

TrafficStats stats_from_counts(const std::vector<ServerCounts>& counts) {
  TrafficStats s;
  for (const auto& c : counts) {
    s.normal_count += c.normal;
    s.malicious_count += c.malicious;
    s.per_server.push_back({c.server, c.normal + c.malicious, c.malicious, 0.0});
  }
  return finish(std::move(s));
}

std::vector<ServerCounts> read_counts_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "server,normal,malicious") {
    throw SchemaError("counts CSV header must be 'server,normal,malicious'");
  }
  std::vector<ServerCounts> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 3) throw SchemaError("counts CSV row needs 3 cells: " + line);
    try {
      out.push_back({cells[0], std::stoull(cells[1]), std::stoull(cells[2])});
    } catch (const std::exception&) {
      throw SchemaError("counts CSV row has non-integer counts: " + line);
    }
  }
  return out;
}

std::string render_stats(const TrafficStats& s) {
  std::ostringstream out;
  out << "normal/malicious: " << s.normal_count << '/' << s.malicious_count << '\n';
  out << "malicious to normal %: "
      << (s.pct_malicious_to_normal ? format_fixed(*s.pct_malicious_to_normal, 2) : "n/a") << '\n';
  for (const auto& row : s.per_server) {
    out << row.server << ": total " << row.total << ", malicious " << row.malicious << ", "
        << format_fixed(row.pct_of_total, 2) << "%\n";
  }
  return out.str();
}

void write_stats_csv(std::ostream& out, const TrafficStats& s) {
  out << "server,total,malicious,pct_of_total\n";
  for (const auto& row : s.per_server) {
    out << row.server << ',' << row.total << ',' << row.malicious << ','
        << format_fixed(row.pct_of_total, 2) << '\n';
  }
  out << "all," << s.normal_count + s.malicious_count << ',' << s.malicious_count << ','
      << format_fixed(percent_2dp(s.malicious_count, s.normal_count + s.malicious_count), 2)
      << '\n';
}

}  // namespace h3lab::capture
