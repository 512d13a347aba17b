#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "h3lab/capture/packet_record.hpp"

namespace h3lab::capture {

struct IngestResult {
  std::vector<PacketRecord> records;
  std::size_t skipped_non_ip = 0;
  std::size_t skipped_truncated = 0;
  /// IPv4 packets that are neither TCP nor UDP.
  std::size_t skipped_other = 0;
};

/// Classic pcap (either byte order, micro- or nanosecond stamps), Ethernet
/// link type, IPv4 only. Throws IngestError on a malformed file header.
IngestResult ingest_pcap(std::istream& in);
IngestResult ingest_pcap(const std::filesystem::path& path);

/// Writes records as Ethernet/IPv4/TCP|UDP frames with zeroed payloads, so
/// lengths and header fields survive a round trip through ingest_pcap.
void write_pcap(std::ostream& out, const std::vector<PacketRecord>& records);
void write_pcap(const std::filesystem::path& path, const std::vector<PacketRecord>& records);

}  // namespace h3lab::capture
