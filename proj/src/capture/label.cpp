#include "h3lab/capture/label.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "h3lab/common/error.hpp"
#include "h3lab/common/net.hpp"
#include "h3lab/common/text.hpp"

namespace h3lab::capture {

namespace {

constexpr std::string_view kLabeledHeader = "ts,src,dst,l4,length,label,class";

}  // namespace

LabelResult label_packets(const std::vector<PacketRecord>& records,
                          const campaign::CampaignManifest& manifest,
                          const std::set<std::string>& attacker_addresses) {
  LabelResult result;
  result.packets.reserve(records.size());
  const auto& schedule = manifest.schedule;
  for (const auto& r : records) {
    LabeledPacket p;
    p.record = r;
    if (r.ts < 0.0 || r.ts > schedule.total) {
      ++result.outside_horizon;
      p.label = std::string(campaign::kNormalLabel);
    } else {
      p.label = campaign::ground_truth(schedule, attacker_addresses, r.src, r.dst, r.ts);
    }
    p.cls = features::map_class(p.label);
    result.packets.push_back(std::move(p));
  }
  return result;
}

LabelResult label_packets(const std::vector<PacketRecord>& records,
                          const campaign::CampaignManifest& manifest) {
  return label_packets(records, manifest, manifest.attacker_addresses());
}

std::map<std::string, std::vector<PacketRecord>> split_per_server(
    const std::vector<PacketRecord>& records, const std::vector<campaign::ServerTarget>& servers) {
  std::map<std::string, std::vector<PacketRecord>> out;
  std::map<std::string, std::string> by_host;
  for (const auto& s : servers) {
    out[s.name];
    by_host[Endpoint::parse(s.address).host] = s.name;
  }
  out[std::string(kOtherBucket)];
  for (const auto& r : records) {
    auto it = by_host.find(r.dst);
    if (it == by_host.end()) it = by_host.find(r.src);
    out[it == by_host.end() ? std::string(kOtherBucket) : it->second].push_back(r);
  }
  return out;
}

void write_labeled_csv(std::ostream& out, const std::vector<LabeledPacket>& packets) {
  out << kLabeledHeader << '\n';
  for (const auto& p : packets) {
    const auto& r = p.record;
    out << format_double(r.ts) << ',' << r.src << ',' << r.dst << ',' << to_string(r.l4) << ','
        << r.length << ',' << p.label << ',' << features::to_string(p.cls) << '\n';
  }
}

void write_labeled_csv(const std::filesystem::path& path,
                       const std::vector<LabeledPacket>& packets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_labeled_csv(out, packets);
}

std::vector<LabeledPacket> read_labeled_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kLabeledHeader) {
    throw SchemaError("labeled CSV header must be '" + std::string(kLabeledHeader) + "'");
  }
  std::vector<LabeledPacket> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 7) {
      throw SchemaError("labeled CSV line " + std::to_string(line_no) + ": expected 7 cells");
    }
    LabeledPacket p;
    try {
      p.record.ts = parse_double(cells[0]);
      p.record.length = static_cast<std::size_t>(parse_double(cells[4]));
    } catch (const ParameterError& e) {
      throw SchemaError("labeled CSV line " + std::to_string(line_no) + ": " + e.what());
    }
    p.record.src = cells[1];
    p.record.dst = cells[2];
    p.record.l4 = cells[3] == "tcp" ? L4::tcp : L4::udp;
    p.label = cells[5];
    const auto cls = features::parse_class_label(cells[6]);
    if (!cls) throw SchemaError("labeled CSV line " + std::to_string(line_no) + ": bad class");
    p.cls = *cls;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LabeledPacket> read_labeled_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open " + path.string());
  return read_labeled_csv(in);
}

}  // namespace h3lab::capture
