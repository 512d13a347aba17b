// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "h3lab/campaign/campaign.hpp"
#include "h3lab/capture/footprint.hpp"
#include "h3lab/capture/label.hpp"
#include "h3lab/capture/stats.hpp"
#include "h3lab/common/error.hpp"
#include "h3lab/common/net.hpp"
#include "h3lab/common/rng.hpp"
#include "h3lab/common/text.hpp"
#include "h3lab/detect/anomaly.hpp"
#include "h3lab/detect/metrics.hpp"
#include "h3lab/detect/tree.hpp"
#include "h3lab/engine/sink.hpp"
#include "h3lab/features/dataset.hpp"
#include "h3lab/features/split.hpp"
#include "h3lab/wire/settings_frame.hpp"
#include "h3lab/wire/varint.hpp"

namespace fs = std::filesystem;
using namespace h3lab;
using features::ClassLabel;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failure reasons; a criterion passes when none were recorded.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    ok_ = ok_ && ok;
  }
  Outcome done(const std::string& summary) const {
    if (ok_) return {true, summary};
    return {false, join(failures_, "; ")};
  }

 private:
  bool ok_ = true;
  std::vector<std::string> failures_;
};

std::string hex(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- varint ----

Outcome varint_codec() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::uint64_t, std::string>> vectors{
      {37, "25"}, {15293, "7bbd"}, {494878333, "9d7f3e7d"},
      {151288809941952652ULL, "c2197c5eff14e88c"}};
  for (const auto& [v, h] : vectors) {
    c.expect(hex(wire::encode_varint(v)) == h, "vector " + std::to_string(v));
  }
  const std::uint64_t bounds[] = {0, 63, 64, 16383, 16384, 1073741823, 1073741824, wire::kVarIntMax};
  const std::size_t lengths[] = {1, 1, 2, 2, 4, 4, 8, 8};
  for (std::size_t i = 0; i < std::size(bounds); ++i) {
    const auto enc = wire::encode_varint(bounds[i]);
    c.expect(enc.size() == lengths[i], "length class at " + std::to_string(bounds[i]));
    c.expect(wire::decode_varint(enc).value == bounds[i], "boundary " + std::to_string(bounds[i]));
  }
  SplitMix64 rng(2024);
  for (int i = 0; i < 100000; ++i) {
    // Spread values across all four length classes.
    const int bits = 1 + static_cast<int>(rng.below(62));
    const std::uint64_t v = rng.next() >> (64 - bits);
    const auto enc = wire::encode_varint(v);
    const auto dec = wire::decode_varint(enc);
    if (dec.value != v || dec.consumed != enc.size()) {
      c.expect(false, "round trip " + std::to_string(v));
      break;
    }
  }
  bool rejected = false;
  try {
    wire::encode_varint(wire::kVarIntMax + 1);
  } catch (const RangeError&) {
    rejected = true;
  }
  c.expect(rejected, "2^62 accepted");
  const double s = seconds_since(t0);
  c.expect(s < 5.0, "runtime " + format_fixed(s, 2) + " s");
  return c.done("1e5 round trips, 4 vectors, 8 boundaries in " + format_fixed(s, 3) + " s");
}

// ---- SETTINGS ----

// Standalone decoder written against the transport spec, sharing no code
// with the library.
std::map<std::uint64_t, std::uint64_t> reference_decode(const std::vector<std::uint8_t>& b,
                                                        bool& ok) {
  std::size_t pos = 0;
  auto read = [&](std::uint64_t& out) {
    if (pos >= b.size()) return false;
    const std::size_t len = std::size_t{1} << (b[pos] >> 6);
    if (pos + len > b.size()) return false;
    out = b[pos] & 0x3f;
    for (std::size_t i = 1; i < len; ++i) out = (out << 8) | b[pos + i];
    // Conformant encoders use the shortest form.
    const std::size_t minimal = out < 64 ? 1 : out < 16384 ? 2 : out < (1ULL << 30) ? 4 : 8;
    if (len != minimal) return false;
    pos += len;
    return true;
  };
  std::map<std::uint64_t, std::uint64_t> out;
  std::uint64_t type = 0, length = 0;
  ok = read(type) && type == 0x04 && read(length) && pos + length == b.size();
  while (ok && pos < b.size()) {
    std::uint64_t id = 0, value = 0;
    ok = read(id) && read(value) && out.emplace(id, value).second;
  }
  return out;
}

Outcome settings_frame() {
  Check c;
  const std::vector<std::tuple<std::uint64_t, std::uint64_t, std::string>> cases{
      {16, 4, "040401100704"}, {409600, 1600, "04080180064000074640"}, {4096, 16, "04050150000710"}};
  for (const auto& [cap, blocked, expected] : cases) {
    const auto bytes = wire::build_settings_frame({cap, blocked, std::nullopt});
    c.expect(hex(bytes) == expected, "bytes for " + std::to_string(cap));
    bool ok = false;
    const auto decoded = reference_decode(bytes, ok);
    c.expect(ok && decoded.size() == 2 && decoded.at(0x01) == cap && decoded.at(0x07) == blocked,
             "reference decode of " + std::to_string(cap));
    const auto parsed = wire::parse_settings_frame(bytes);
    c.expect(parsed.max_table_capacity == cap && parsed.blocked_streams == blocked,
             "library decode of " + std::to_string(cap));
  }
  const std::pair<std::uint64_t, bool> trig[] = {{0, true}, {16, true}, {31, true},
                                                 {32, false}, {4096, false}, {409600, false}};
  for (const auto& [cap, expected] : trig) {
    c.expect(wire::triggers_low_capacity_bug({cap, 4, std::nullopt}) == expected,
             "cve_trigger at " + std::to_string(cap));
  }
  return c.done("3 frames match bytes and independent decoder; trigger boundary 31/32");
}

// ---- schedules ----

Outcome schedule_arithmetic() {
  using engine::AttackKind;
  using campaign::PhaseKind;
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto servers = campaign::default_servers();
  for (auto kind : {AttackKind::Http3Flood, AttackKind::Http3Loris, AttackKind::QuicFlood,
                    AttackKind::QuicLoris, AttackKind::QuicEnc, AttackKind::Fuzzing}) {
    const auto s = campaign::build_schedule(kind, servers);
    c.expect(s.total == 600 && s.attack_seconds() == 360,
             std::string(engine::to_string(kind)) + " totals");
    c.expect(s.phases.front().kind == PhaseKind::normal && s.phases.front().end == 240,
             std::string(engine::to_string(kind)) + " lead-in");
    for (std::size_t i = 0; i < servers.size(); ++i) {
      const auto& p = s.phases[1 + i];
      c.expect(p.kind == PhaseKind::attack && p.start == 240 + 60.0 * i && p.length() == 60 &&
                   p.target->name == servers[i].name,
               std::string(engine::to_string(kind)) + " rotation");
    }
  }
  {
    const auto s = campaign::build_schedule(AttackKind::Http3TablesStreams, servers);
    c.expect(s.total == 1200 && s.attack_seconds() == 720, "tables totals");
    double lo1 = 1e9, hi1 = 0, lo2 = 1e9, hi2 = 0;
    for (const auto& p : s.phases) {
      if (p.kind != PhaseKind::attack) continue;
      c.expect(p.length() == 60, "tables slot length");
      auto& lo = p.cycle == 1 ? lo1 : lo2;
      auto& hi = p.cycle == 1 ? hi1 : hi2;
      lo = std::min(lo, p.start);
      hi = std::max(hi, p.end);
      c.expect(p.settings == (p.cycle == 1 ? wire::kSettingsVariantHigh : wire::kSettingsVariantLow),
               "tables variant per cycle");
    }
    c.expect(lo1 == 240 && hi1 == 600 && lo2 == 780 && hi2 == 1140, "tables windows");
  }
  {
    const auto s = campaign::build_schedule(AttackKind::HttpSmuggle, servers);
    c.expect(s.total == 900 && s.attack_seconds() == 720, "smuggle totals");
    c.expect(s.phases.front().end == 180 && s.phases[1].length() == 120, "smuggle layout");
  }
  for (auto kind : {AttackKind::Http2Concurrent, AttackKind::Http2Pause}) {
    const auto s = campaign::build_schedule(kind, servers);
    c.expect(s.total == 360 && s.attack_seconds() == 180, "http2 totals");
    c.expect(s.phases.front().end == 180, "http2 lead-in");
    for (std::size_t i = 1; i < s.phases.size(); ++i) {
      c.expect(s.phases[i].length() == 30 && s.phases[i].start == 180 + 30.0 * (i - 1),
               "http2 30 s rotation");
    }
  }
  const double s = seconds_since(t0);
  c.expect(s < 1.0, "runtime");
  return c.done("flood 600/360, tables 1200/720 [240,600)+[780,1140), smuggle 900/720 @180, "
                "http2 360/180 x30 s");
}

// ---- stats ----

Outcome table_stats() {
  Check c;
  auto near = [](double a, double b) { return std::fabs(a - b) <= 0.01 + 1e-9; };
  {
    const auto st = capture::stats_from_counts({{"all", 1316770, 498810}});
    c.expect(st.pct_malicious_to_normal && near(*st.pct_malicious_to_normal, 37.88),
             "37.88 overall");
  }
  struct Row {
    std::string name;
    std::uint64_t total, malicious;
    double expected;
  };
  const std::vector<Row> rows{{"LiteSpeed", 329264, 112466, 34.15},
                              {"IIS", 146020, 87720, 60.07},
                              {"Cloudflare", 342777, 76747, 22.38},
                              {"Fuzzing", 660412, 22224, 3.36},
                              {"HTTP3-loris", 677240, 74572, 11.01}};
  std::string got;
  for (const auto& r : rows) {
    const double pct = capture::percent_2dp(r.malicious, r.total);
    c.expect(near(pct, r.expected), r.name + " " + format_fixed(pct, 2));
    got += " " + r.name + "=" + format_fixed(pct, 2);
  }
  // The same numbers through the labeled-packet path.
  std::vector<capture::LabeledPacket> packets;
  for (int i = 0; i < 10000; ++i) {
    capture::LabeledPacket p;
    p.record.src = "10.12.0.1";
    p.record.dst = "10.0.0.4";
    const bool mal = i < 3415;
    p.label = mal ? "http3-flood" : "Normal";
    p.cls = mal ? ClassLabel::DDoSFlooding : ClassLabel::Normal;
    packets.push_back(p);
  }
  const auto st = capture::compute_stats(packets, campaign::default_servers());
  c.expect(st.per_server.front().pct_of_total == 34.15, "packet path");
  return c.done("37.88 overall;" + got);
}

// ---- determinism ----

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + H3LAB_CLI_PATH + "\" " + args + " > /dev/null";
  return std::system(cmd.c_str());
}

Outcome dry_run_determinism(const fs::path& work) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  for (const char* run : {"a", "b"}) {
    const fs::path dir = work / run;
    c.expect(run_cli("campaign http3-flood --seed 42 --out \"" + dir.string() + "\"") == 0,
             "campaign exit");
    c.expect(run_cli("label --events \"" + (dir / "events.jsonl").string() + "\" --manifest \"" +
                     (dir / "manifest.json").string() + "\" --out \"" + dir.string() + "\"") == 0,
             "label exit");
  }
  const auto ev_a = slurp(work / "a" / "events.jsonl");
  const auto lab_a = slurp(work / "a" / "labeled.csv");
  c.expect(!ev_a.empty() && ev_a == slurp(work / "b" / "events.jsonl"), "event logs differ");
  c.expect(!lab_a.empty() && lab_a == slurp(work / "b" / "labeled.csv"), "labeled CSVs differ");
  const double s = seconds_since(t0);
  c.expect(s < 60, "runtime");
  return c.done(std::to_string(ev_a.size()) + " B events, " + std::to_string(lab_a.size()) +
                " B labeled CSV identical (" + format_fixed(s, 2) + " s)");
}

// ---- labeling oracle ----

Outcome labeling_oracle() {
  Check c;
  const auto schedule =
      campaign::build_schedule(engine::AttackKind::Http3Flood, campaign::default_servers());
  campaign::BenignClientModel model;
  model.seed = 99;
  engine::DryRunSink sink;
  auto log = campaign::run_campaign(schedule, model, sink, {99});
  c.expect(log.events.size() >= 10000, "campaign too small: " + std::to_string(log.events.size()));
  // Spread the sample over the whole horizon.
  std::vector<engine::AttackEvent> events;
  const std::size_t n = std::min<std::size_t>(10000, log.events.size());
  for (std::size_t i = 0; i < n; ++i) events.push_back(log.events[i * log.events.size() / n]);

  const auto labeled = capture::label_packets(capture::records_from_events(events), log.manifest);
  std::map<std::string, std::size_t> pipeline, brute;
  for (const auto& p : labeled.packets) ++pipeline[p.label];

  const auto attackers = log.manifest.identity.all_addresses();
  for (const auto& ev : events) {
    const std::string src = *ev.find("src");
    const std::string dst = Endpoint::parse(ev.target).host;
    bool attacker = false;
    for (const auto& a : attackers) attacker = attacker || a == src || a == dst;
    bool in_attack = false;
    for (const auto& ph : schedule.phases) {
      in_attack = in_attack || (ph.kind == campaign::PhaseKind::attack && ev.ts >= ph.start &&
                                ev.ts <= ph.end);
    }
    ++brute[attacker && in_attack ? "http3-flood" : "Normal"];
  }
  c.expect(pipeline == brute, "counts differ");
  std::string summary;
  for (const auto& [k, v] : brute) summary += " " + k + "=" + std::to_string(v);
  return c.done(std::to_string(n) + " events:" + summary);
}

// ---- preprocessing ----

std::vector<features::RawRow> campaign_rows(engine::AttackKind kind, std::uint64_t seed,
                                            std::size_t clients = 13) {
  const auto schedule = campaign::build_schedule(kind, campaign::default_servers());
  campaign::BenignClientModel model;
  model.seed = seed;
  model.client_count = clients;
  engine::DryRunSink sink;
  const auto log = campaign::run_campaign(schedule, model, sink, {seed});
  const auto labeled =
      capture::label_packets(capture::records_from_events(log.events), log.manifest);
  return features::extract_rows(labeled.packets);
}

bool three_decimals(double v) {
  const double scaled = v * 1000.0;
  return std::fabs(scaled - std::round(scaled)) < 1e-6;
}

Outcome preprocessing() {
  Check c;
  auto rows = campaign_rows(engine::AttackKind::Http3Flood, 5);
  auto extra = campaign_rows(engine::AttackKind::HttpSmuggle, 6);
  rows.insert(rows.end(), extra.begin(), extra.end());
  const auto& schema = features::FeatureSchema::canonical();
  std::size_t checked = 0;
  for (const std::vector<double>& fractions :
       {std::vector<double>{0.6, 0.4}, std::vector<double>{0.5, 0.3, 0.2}}) {
    const auto ds = features::build_dataset(rows, schema, {fractions, 17});
    for (const auto& r : ds.splits.front()) {
      for (double v : r.minmax) {
        c.expect(v >= 0.0 && v <= 1.0 && three_decimals(v), "minmax value " + format_double(v));
      }
    }
    const auto& cats = ds.preprocessor.encoder().categories;
    for (const auto& split : ds.splits) {
      for (const auto& r : split) {
        std::size_t off = 0;
        for (const auto& group : cats) {
          int ones = 0, zeros = 0, negs = 0;
          for (std::size_t k = 0; k < group.size(); ++k) {
            const int v = r.ohe[off + k];
            ones += v == 1;
            zeros += v == 0;
            negs += v == -1;
          }
          const auto g = static_cast<int>(group.size());
          c.expect((ones == 1 && zeros == g - 1) || zeros == g || negs == g, "ohe group shape");
          off += group.size();
        }
        ++checked;
      }
    }
    // Split sizes against the exact per-class share.
    std::map<ClassLabel, std::size_t> per_class;
    for (const auto& r : rows) ++per_class[r.cls];
    for (std::size_t s = 0; s < fractions.size(); ++s) {
      std::map<ClassLabel, std::size_t> got;
      for (const auto& r : ds.splits[s]) ++got[r.label];
      for (const auto& [cls, n] : per_class) {
        const double exact = static_cast<double>(n) * fractions[s];
        c.expect(std::fabs(static_cast<double>(got[cls]) - exact) <= 1.0, "split deviation");
      }
    }
  }
  return c.done(std::to_string(rows.size()) + " rows, " + std::to_string(checked) +
                " processed rows checked over 60/40 and 50/30/20");
}

// ---- baseline detector ----

double subset_macro_f1(const std::vector<ClassLabel>& pred, const std::vector<ClassLabel>& truth,
                       ClassLabel a, ClassLabel b) {
  // Macro F1 over {a, b}, restricted to rows whose truth is a or b.
  double total = 0;
  for (ClassLabel cls : {a, b}) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (truth[i] != a && truth[i] != b) continue;
      tp += pred[i] == cls && truth[i] == cls;
      fp += pred[i] == cls && truth[i] != cls;
      fn += pred[i] != cls && truth[i] == cls;
    }
    total += tp == 0 ? 0.0 : 2 * tp / (2 * tp + fp + fn);
  }
  return total / 2;
}

Outcome baseline_detector() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<features::RawRow> rows;
  std::uint64_t seed = 1000;
  for (auto kind : engine::dataset_attack_kinds()) {
    auto part = campaign_rows(kind, ++seed);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  const auto ds = features::build_dataset(rows, features::FeatureSchema::canonical(), {{0.6, 0.4}, 7});
  const auto train = detect::FeatureMatrix::from_rows(ds.header(), ds.splits[0]);
  const auto test = detect::FeatureMatrix::from_rows(ds.header(), ds.splits[1]);
  const auto tree = detect::DecisionTree::train(train);
  const auto pred = tree.predict(test);
  const double flood_f1 =
      subset_macro_f1(pred.labels, test.labels, ClassLabel::Normal, ClassLabel::DDoSFlooding);
  const auto report = detect::evaluate(pred.labels, test.labels);
  const auto li = features::class_index(ClassLabel::DDoSLoris);
  std::uint64_t loris_total = 0;
  for (auto v : report.confusion[li]) loris_total += v;
  const double loris_recall =
      loris_total == 0 ? 0.0 : static_cast<double>(report.confusion[li][li]) / loris_total;
  c.expect(rows.size() >= 50000, "only " + std::to_string(rows.size()) + " rows");
  c.expect(flood_f1 >= 0.8, "flood-vs-Normal macro-F1 " + format_fixed(flood_f1, 3));
  c.expect(loris_recall >= 0.3, "loris recall " + format_fixed(loris_recall, 3));

  // Centroid-MAE detector on a shifted synthetic cluster.
  SplitMix64 rng(3);
  detect::FeatureMatrix synth;
  constexpr std::size_t dims = 12;
  for (std::size_t i = 0; i < dims; ++i) synth.columns.push_back("f" + std::to_string(i));
  auto make = [&](std::size_t n, double shift, ClassLabel label, detect::FeatureMatrix& m) {
    m.columns = synth.columns;
    std::vector<double> row(dims);
    for (std::size_t r = 0; r < n; ++r) {
      for (auto& v : row) v = rng.uniform(0.2, 0.4) + shift;
      m.push_back(row, label);
    }
  };
  detect::FeatureMatrix a_train, a_val, a_test;
  make(2000, 0.0, ClassLabel::Normal, a_train);
  make(600, 0.0, ClassLabel::Normal, a_val);
  make(600, 0.3, ClassLabel::DDoSFlooding, a_val);
  make(400, 0.0, ClassLabel::Normal, a_test);
  make(400, 0.3, ClassLabel::DDoSFlooding, a_test);
  auto model = detect::anomaly_fit(a_train);
  detect::calibrate_threshold(model, a_val);
  const auto ar = detect::evaluate_anomaly(model, a_test);
  c.expect(ar.f1 >= 0.9, "anomaly F1 " + format_fixed(ar.f1, 3));
  const double s = seconds_since(t0);
  c.expect(s < 600, "runtime");
  return c.done(std::to_string(rows.size()) + " rows; DT flood/Normal macro-F1 " +
                format_fixed(flood_f1, 3) + ", overall macro-F1 " + format_fixed(report.f1, 2) +
                "%, loris recall " + format_fixed(loris_recall, 3) + "; anomaly F1 " +
                format_fixed(ar.f1, 3) + " (" + format_fixed(s, 1) + " s)");
}

// ---- footprint ----

Outcome footprint_shape(const fs::path& work) {
  Check c;
  const fs::path dir = work / "fp";
  c.expect(run_cli("campaign http3-flood --seed 8 --out \"" + dir.string() + "\"") == 0,
           "campaign exit");
  c.expect(run_cli("label --events \"" + (dir / "events.jsonl").string() + "\" --manifest \"" +
                   (dir / "manifest.json").string() + "\" --out \"" + dir.string() + "\"") == 0,
           "label exit");
  c.expect(run_cli("footprint --labeled \"" + (dir / "labeled.csv").string() + "\" --out \"" +
                   dir.string() + "\"") == 0,
           "footprint exit");
  std::ifstream f(dir / "footprint.csv");
  std::string line;
  std::getline(f, line);
  c.expect(line == "t,normal_pps,malicious_pps", "header");
  double before_max = 0, after_sum = 0, normal_sum = 0;
  std::size_t after_n = 0, before_n = 0;
  while (std::getline(f, line)) {
    const auto parts = split(line, ',');
    const double t = parse_double(parts[0]);
    const double mal = parse_double(parts[2]);
    if (t < 240) {
      before_max = std::max(before_max, mal);
      normal_sum += parse_double(parts[1]);
      ++before_n;
    } else if (t < 600) {
      after_sum += mal;
      ++after_n;
    }
  }
  const double after_mean = after_n == 0 ? 0 : after_sum / after_n;
  const double normal_mean = before_n == 0 ? 0 : normal_sum / before_n;
  c.expect(before_max == 0, "malicious PPS before 240 s");
  c.expect(after_mean > 0 && after_mean > normal_mean, "no step after 240 s");
  return c.done("0 malicious pps before 240 s; mean " + format_fixed(after_mean, 1) +
                " pps after (normal " + format_fixed(normal_mean, 1) + ")");
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / ("h3lab_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(work);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"varint codec", varint_codec},
      {"SETTINGS frame", settings_frame},
      {"schedule arithmetic", schedule_arithmetic},
      {"traffic stats", table_stats},
      {"dry-run determinism", [&] { return dry_run_determinism(work); }},
      {"labeling oracle", labeling_oracle},
      {"preprocessing and splits", preprocessing},
      {"baseline detector", baseline_detector},
      {"footprint shape", [&] { return footprint_shape(work); }},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::error_code ec;
  fs::remove_all(work, ec);
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed") << '\n';
  return failed == 0 ? 0 : 1;
}
