#include <doctest.h>

#include <sstream>

#include "h3lab/campaign/campaign.hpp"
#include "h3lab/capture/footprint.hpp"
#include "h3lab/capture/label.hpp"
#include "h3lab/capture/pcap.hpp"
#include "h3lab/capture/stats.hpp"
#include "h3lab/common/error.hpp"
#include "h3lab/engine/sink.hpp"

using namespace h3lab;
using namespace h3lab::capture;
using features::ClassLabel;

namespace {

void put16(std::string& s, std::uint16_t v) { s.append(reinterpret_cast<const char*>(&v), 2); }
void put32(std::string& s, std::uint32_t v) { s.append(reinterpret_cast<const char*>(&v), 4); }

std::string pcap_header() {
  std::string s;
  put32(s, 0xa1b2c3d4);
  put16(s, 2);
  put16(s, 4);
  put32(s, 0);
  put32(s, 0);
  put32(s, 65535);
  put32(s, 1);
  return s;
}

void add_frame(std::string& s, const std::string& frame, std::uint32_t sec = 1) {
  put32(s, sec);
  put32(s, 0);
  put32(s, static_cast<std::uint32_t>(frame.size()));
  put32(s, static_cast<std::uint32_t>(frame.size()));
  s += frame;
}

PacketRecord rec(double ts, std::string src, std::string dst, L4 l4 = L4::udp,
                 std::size_t length = 100) {
  PacketRecord r;
  r.ts = ts;
  r.src = std::move(src);
  r.dst = std::move(dst);
  r.src_port = 40000;
  r.dst_port = 443;
  r.l4 = l4;
  r.length = length;
  return r;
}

campaign::CampaignManifest flood_manifest() {
  campaign::CampaignManifest m;
  m.schedule = campaign::build_schedule(engine::AttackKind::Http3Flood, campaign::default_servers());
  return m;
}

LabeledPacket lp(double ts, bool malicious) {
  LabeledPacket p;
  p.record = rec(ts, "10.11.0.10", "10.0.0.4");
  p.label = malicious ? "http3-flood" : "Normal";
  p.cls = malicious ? ClassLabel::DDoSFlooding : ClassLabel::Normal;
  return p;
}

}  // namespace

TEST_CASE("records from events") {
  engine::AttackEvent ev;
  ev.ts = 3.5;
  ev.target = "10.0.0.4:443";
  ev.bytes = 1000;
  ev.detail = {{"src", "10.12.0.1"}, {"sport", "50000"}, {"l4", "udp"}, {"wire_len", "1158"},
               {"quic.packet_length", "1158"}, {"role", "attacker"}};
  const auto r = record_from_event(ev);
  CHECK(r.length == 1200);
  CHECK(r.fields.at("frame.len") == "1200");
  CHECK(r.fields.at("udp.length") == "1166");
  CHECK(r.fields.at("ip.len") == "1186");
  CHECK(r.fields.at("quic.packet_length") == "1158");
  CHECK(r.fields.count("role") == 0);
  for (const auto& [k, v] : r.fields) CHECK(k.rfind("tcp.", 0) != 0);
  CHECK(r.src_port == 50000);
  CHECK(r.dst_port == 443);
}

TEST_CASE("empty capture") {
  std::istringstream in(pcap_header());
  const auto r = ingest_pcap(in);
  CHECK(r.records.empty());
  CHECK(r.skipped_non_ip + r.skipped_truncated + r.skipped_other == 0);
}

TEST_CASE("bad magic is rejected") {
  std::istringstream in(std::string(24, '\0'));
  CHECK_THROWS_AS(ingest_pcap(in), IngestError);
  std::istringstream short_in("abc");
  CHECK_THROWS_AS(ingest_pcap(short_in), IngestError);
}

TEST_CASE("ARP frames are skipped") {
  std::string s = pcap_header();
  std::string arp(42, '\0');
  arp[12] = '\x08';
  arp[13] = '\x06';
  add_frame(s, arp);
  std::istringstream in(s);
  const auto r = ingest_pcap(in);
  CHECK(r.records.empty());
  CHECK(r.skipped_non_ip == 1);
}

TEST_CASE("pcap round trip through the writer") {
  std::vector<PacketRecord> records{rec(0.5, "10.11.0.10", "10.0.0.4", L4::udp, 1200),
                                    rec(1.25, "10.12.0.3", "10.0.0.5", L4::tcp, 74),
                                    rec(2.0, "10.0.0.4", "10.11.0.10", L4::udp, 60)};
  records[1].fields["tcp.flags.syn"] = "1";
  std::stringstream buf;
  write_pcap(buf, records);
  const auto r = ingest_pcap(buf);
  REQUIRE(r.records.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r.records[i].length == records[i].length);
    CHECK(r.records[i].src == records[i].src);
    CHECK(r.records[i].dst == records[i].dst);
    CHECK(r.records[i].l4 == records[i].l4);
    CHECK(r.records[i].ts == doctest::Approx(records[i].ts));
  }
  CHECK(r.records[1].fields.at("tcp.flags.syn") == "1");
  CHECK(r.records[0].fields.at("udp.length") == std::to_string(1200 - 14 - 20));
}

TEST_CASE("truncated packet records are counted") {
  std::vector<PacketRecord> records{rec(0.5, "10.11.0.10", "10.0.0.4")};
  std::stringstream buf;
  write_pcap(buf, records);
  std::string bytes = buf.str();
  bytes.resize(bytes.size() - 10);
  std::istringstream in(bytes);
  const auto r = ingest_pcap(in);
  CHECK(r.records.empty());
  CHECK(r.skipped_truncated == 1);
}

TEST_CASE("labeling rule") {
  const auto m = flood_manifest();
  const auto attacker = m.identity.attacker;
  const auto r = label_packets({rec(250, attacker, "10.0.0.4"), rec(100, attacker, "10.0.0.4"),
                                rec(250, "10.11.0.10", "10.0.0.4"), rec(250, "10.0.0.4", attacker),
                                rec(700, attacker, "10.0.0.4")},
                               m);
  REQUIRE(r.packets.size() == 5);
  CHECK(r.packets[0].label == "http3-flood");
  CHECK(r.packets[0].cls == ClassLabel::DDoSFlooding);
  CHECK(r.packets[1].label == "Normal");
  CHECK(r.packets[2].label == "Normal");
  CHECK(r.packets[3].label == "http3-flood");
  CHECK(r.packets[4].label == "Normal");
  CHECK(r.outside_horizon == 1);
}

TEST_CASE("per-server split") {
  std::vector<PacketRecord> records;
  for (const auto& s : campaign::default_servers()) {
    records.push_back(rec(1, "10.11.0.10", Endpoint::parse(s.address).host));
  }
  records.push_back(rec(1, "10.11.0.10", "10.12.0.11"));
  const auto parts = split_per_server(records, campaign::default_servers());
  std::size_t total = 0;
  for (const auto& s : campaign::default_servers()) CHECK(parts.at(s.name).size() == 1);
  CHECK(parts.at(std::string(kOtherBucket)).size() == 1);
  for (const auto& [k, v] : parts) total += v.size();
  CHECK(total == records.size());
}

TEST_CASE("labeled CSV round trip") {
  std::vector<LabeledPacket> packets{lp(0.125, false), lp(250.5, true)};
  std::stringstream s;
  write_labeled_csv(s, packets);
  const auto back = read_labeled_csv(s);
  REQUIRE(back.size() == 2);
  CHECK(back[1].record.ts == 250.5);
  CHECK(back[1].label == "http3-flood");
  CHECK(back[1].cls == ClassLabel::DDoSFlooding);
  CHECK(back[0].record.length == 100);
  std::istringstream bad("a,b,c\n");
  CHECK_THROWS_AS(read_labeled_csv(bad), SchemaError);
}

TEST_CASE("footprint buckets") {
  std::vector<LabeledPacket> packets;
  for (int i = 0; i < 10; ++i) packets.push_back(lp(i * 0.1, false));
  auto f = footprint(packets);
  REQUIRE(f.t.size() == 1);
  CHECK(f.normal[0] == 10);
  CHECK(f.malicious[0] == 0);
  packets.push_back(lp(3.5, true));
  f = footprint(packets, 2.0);
  CHECK(f.t.size() == 2);
  CHECK(f.total() == packets.size());
  CHECK(f.malicious[1] == 1);
  CHECK_THROWS_AS(footprint(packets, 0), ParameterError);
  std::ostringstream csv;
  write_footprint_csv(csv, f);
  CHECK(csv.str().rfind("t,normal_pps,malicious_pps\n", 0) == 0);
  CHECK(render_footprint_svg(f, "x").find("<svg") != std::string::npos);
}

TEST_CASE("flood campaign footprint is quiet before 240 s") {
  const auto schedule =
      campaign::build_schedule(engine::AttackKind::Http3Flood, campaign::default_servers());
  campaign::BenignClientModel model;
  engine::DryRunSink sink;
  const auto log = campaign::run_campaign(schedule, model, sink, {3});
  const auto labeled = label_packets(records_from_events(log.events), log.manifest);
  const auto f = footprint(labeled.packets);
  for (std::size_t i = 0; i < f.t.size(); ++i) {
    if (f.t[i] < 240) CHECK(f.malicious[i] == 0);
  }
  CHECK(f.total() == log.events.size());
}

TEST_CASE("table percentages") {
  const auto st = stats_from_counts({{"all", 1316770, 498810}});
  REQUIRE(st.pct_malicious_to_normal);
  CHECK(*st.pct_malicious_to_normal == doctest::Approx(37.88).epsilon(1e-9));
  CHECK(percent_2dp(112466, 329264) == doctest::Approx(34.15).epsilon(0.0003));
  CHECK(percent_2dp(0, 10) == 0.0);
  CHECK(percent_2dp(5, 0) == 0.0);
  const auto none = stats_from_counts({{"x", 100, 0}});
  CHECK(*none.pct_malicious_to_normal == 0.0);
  CHECK(none.per_server[0].pct_of_total == 0.0);
  CHECK(render_stats(st).find("37.88") != std::string::npos);
}

TEST_CASE("counts CSV") {
  std::istringstream in("server,normal,malicious\nLiteSpeed,216798,112466\n");
  const auto counts = read_counts_csv(in);
  REQUIRE(counts.size() == 1);
  const auto st = stats_from_counts(counts);
  CHECK(st.per_server[0].total == 329264);
  CHECK(st.per_server[0].pct_of_total == doctest::Approx(34.16));
  std::istringstream bad("server,count\n");
  CHECK_THROWS(read_counts_csv(bad));
}

TEST_CASE("stats from labeled packets follow server order") {
  std::vector<LabeledPacket> packets{lp(1, false), lp(2, true), lp(3, true)};
  const auto st = compute_stats(packets, campaign::default_servers());
  CHECK(st.normal_count == 1);
  CHECK(st.malicious_count == 2);
  CHECK(st.per_server[0].server == "OpenLiteSpeed");
  CHECK(st.per_server[0].total == 3);
  CHECK(st.per_server[0].pct_of_total == doctest::Approx(66.67));
  CHECK(*st.pct_malicious_to_normal == 200.0);
}
