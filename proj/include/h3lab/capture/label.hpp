#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "h3lab/campaign/campaign.hpp"
#include "h3lab/capture/packet_record.hpp"
#include "h3lab/features/class_label.hpp"

namespace h3lab::capture {

struct LabeledPacket {
  PacketRecord record;
  std::string label;  // "Normal" or an attack name
  features::ClassLabel cls = features::ClassLabel::Normal;
};

struct LabelResult {
  std::vector<LabeledPacket> packets;
  /// Packets stamped outside [0, total]; labeled Normal.
  std::size_t outside_horizon = 0;
};

/// Attack label iff src or dst is an attacker address and ts lies in an
/// attack phase of the manifest's schedule.
LabelResult label_packets(const std::vector<PacketRecord>& records,
                          const campaign::CampaignManifest& manifest,
                          const std::set<std::string>& attacker_addresses);
LabelResult label_packets(const std::vector<PacketRecord>& records,
                          const campaign::CampaignManifest& manifest);

inline constexpr std::string_view kOtherBucket = "other";

/// Records keyed by the server whose address is src or dst; everything
/// else under "other". Every server gets a (possibly empty) bucket.
std::map<std::string, std::vector<PacketRecord>> split_per_server(
    const std::vector<PacketRecord>& records, const std::vector<campaign::ServerTarget>& servers);

/// CSV columns: ts,src,dst,l4,length,label,class.
void write_labeled_csv(std::ostream& out, const std::vector<LabeledPacket>& packets);
void write_labeled_csv(const std::filesystem::path& path,
                       const std::vector<LabeledPacket>& packets);

/// Inverse of write_labeled_csv (protocol fields are not stored). Throws
/// SchemaError on a header mismatch.
std::vector<LabeledPacket> read_labeled_csv(std::istream& in);
std::vector<LabeledPacket> read_labeled_csv(const std::filesystem::path& path);

}  // namespace h3lab::capture
