#include "h3lab/cli/dispatch.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "h3lab/campaign/campaign.hpp"
#include "h3lab/capture/footprint.hpp"
#include "h3lab/capture/pcap.hpp"
#include "h3lab/capture/stats.hpp"
#include "h3lab/common/error.hpp"
#include "h3lab/common/net.hpp"
#include "h3lab/common/text.hpp"
#include "h3lab/detect/anomaly.hpp"
#include "h3lab/detect/metrics.hpp"
#include "h3lab/detect/tree.hpp"
#include "h3lab/engine/downgrade.hpp"
#include "h3lab/engine/planner.hpp"
#include "h3lab/features/dataset.hpp"

namespace h3lab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted.store(true); }

// Routes SIGINT to the stop flag for the lifetime of a live run.
class SigintScope {
 public:
  SigintScope() {
    g_interrupted.store(false);
    previous_ = std::signal(SIGINT, on_sigint);
  }
  ~SigintScope() { std::signal(SIGINT, previous_); }
  SigintScope(const SigintScope&) = delete;
  SigintScope& operator=(const SigintScope&) = delete;

 private:
  void (*previous_)(int) = SIG_DFL;
};

struct Common {
  bool dry_run = false;
  bool live = false;
  bool acknowledged = false;
  std::uint64_t seed = 0;
  std::string out;
};

void add_mode_flags(CLI::App& cmd, Common& c) {
  cmd.add_flag("--dry-run", c.dry_run, "Plan only; nothing touches the network (default)");
  cmd.add_flag("--live", c.live, "Execute against the target");
  cmd.add_flag("--yes-i-own-this-target", c.acknowledged,
               "Confirm you own or are authorised to test the target (required for --live)");
}

void add_seed_out(CLI::App& cmd, Common& c) {
  cmd.add_option("--seed", c.seed, "Seed for every random draw");
  cmd.add_option("--out", c.out, std::string("Output directory (default $") + kOutEnv + " or .)");
}

fs::path output_dir(const Common& c) {
  fs::path dir = c.out;
  if (dir.empty()) {
    const char* env = std::getenv(kOutEnv);
    dir = env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".");
  }
  fs::create_directories(dir);
  return dir;
}

bool live_mode(const Common& c) {
  if (c.live && c.dry_run) throw ParameterError("--live and --dry-run are exclusive");
  if (c.live && !c.acknowledged) {
    throw SafetyError(
        "refusing live traffic without --yes-i-own-this-target; only test systems you own or "
        "are authorised to test");
  }
  return c.live;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IngestError(path.string() + " is not JSON: " + e.what());
  }
}

void write_events(const fs::path& path, const std::vector<engine::AttackEvent>& events,
                  bool truncated = false) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  engine::write_event_log(f, events, truncated);
}

engine::AttackKind parse_kind(const std::string& name) {
  const auto kind = engine::parse_attack_kind(name);
  if (!kind) throw ParameterError("unknown attack kind '" + name + "'");
  return *kind;
}

std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_double(part));
  return out;
}

json params_json(const engine::AttackParams& p) {
  json j{{"parallelism", p.parallelism},
         {"per_request_timeout", p.per_request_timeout},
         {"request_period", p.request_period},
         {"payload_len", p.payload_len},
         {"duration", p.duration},
         {"seed", p.seed},
         {"smuggle_variant", engine::to_string(p.smuggle_variant)},
         {"max_total_connections", p.max_total_connections},
         {"max_concurrent_streams", p.max_concurrent_streams},
         {"pause_period", p.pause_period},
         {"target_capabilities", p.target_capabilities.to_string()}};
  if (p.settings) {
    json s = json::object();
    if (p.settings->max_table_capacity) s["max_table_capacity"] = *p.settings->max_table_capacity;
    if (p.settings->blocked_streams) s["blocked_streams"] = *p.settings->blocked_streams;
    if (p.settings->max_field_section_size) {
      s["max_field_section_size"] = *p.settings->max_field_section_size;
    }
    j["settings"] = s;
  }
  return j;
}

// ---- attack ----------------------------------------------------------------

struct AttackArgs {
  Common common;
  std::string kind;
  std::string target = "10.0.0.4:443";
  CLI::Option* parallelism_opt = nullptr;
  std::size_t parallelism = 0;
  CLI::Option* duration_opt = nullptr;
  double duration = 0;
  CLI::Option* timeout_opt = nullptr;
  double timeout = 0;
  CLI::Option* period_opt = nullptr;
  double period = 0;
  CLI::Option* payload_opt = nullptr;
  std::size_t payload_len = 0;
  std::string variant;
  std::string settings;
  CLI::Option* capacity_opt = nullptr;
  std::uint64_t capacity = 0;
  CLI::Option* blocked_opt = nullptr;
  std::uint64_t blocked = 0;
  CLI::Option* max_conn_opt = nullptr;
  std::uint64_t max_conn = 0;
  CLI::Option* max_streams_opt = nullptr;
  std::uint64_t max_streams = 0;
  CLI::Option* pause_opt = nullptr;
  double pause_period = 0;
  std::string capabilities;
  double time_scale = 1.0;
  bool not_h3_only = false;
};

engine::AttackParams attack_params(const AttackArgs& a, engine::AttackKind kind) {
  auto p = engine::default_params(kind == engine::AttackKind::DowngradeProbe
                                      ? engine::AttackKind::DowngradeProbe
                                      : kind);
  p.seed = a.common.seed;
  if (a.parallelism_opt->count() > 0) p.parallelism = a.parallelism;
  if (a.duration_opt->count() > 0) p.duration = a.duration;
  if (a.timeout_opt->count() > 0) p.per_request_timeout = a.timeout;
  if (a.period_opt->count() > 0) p.request_period = a.period;
  if (a.payload_opt->count() > 0) p.payload_len = a.payload_len;
  if (!a.variant.empty()) p.smuggle_variant = engine::parse_smuggle_variant(a.variant);
  if (!a.settings.empty()) {
    if (a.settings == "low") {
      p.settings = wire::kSettingsVariantLow;
    } else if (a.settings == "high") {
      p.settings = wire::kSettingsVariantHigh;
    } else if (a.settings == "defaults") {
      p.settings = wire::kSettingsDefaults;
    } else if (a.settings == "none") {
      p.settings.reset();
    } else {
      throw ParameterError("--settings must be low, high, defaults or none");
    }
  }
  if (a.capacity_opt->count() > 0 || a.blocked_opt->count() > 0) {
    wire::SettingsFrame s = p.settings.value_or(wire::SettingsFrame{});
    if (a.capacity_opt->count() > 0) s.max_table_capacity = a.capacity;
    if (a.blocked_opt->count() > 0) s.blocked_streams = a.blocked;
    p.settings = s;
  }
  if (a.max_conn_opt->count() > 0) p.max_total_connections = a.max_conn;
  if (a.max_streams_opt->count() > 0) p.max_concurrent_streams = a.max_streams;
  if (a.pause_opt->count() > 0) p.pause_period = a.pause_period;
  if (!a.capabilities.empty()) p.target_capabilities = engine::Capabilities::parse(a.capabilities);
  engine::validate(p);
  return p;
}

int run_downgrade(const AttackArgs& a, const engine::AttackParams& p, bool live,
                  const fs::path& out_dir, std::ostream& out) {
  std::unique_ptr<engine::CapabilityProber> prober;
  std::unique_ptr<engine::TrafficSink> sink;
  engine::PosixTransport transport;
  if (live) {
    prober = std::make_unique<engine::SocketProber>();
    sink = std::make_unique<engine::LiveSink>(transport,
                                              engine::TargetAcknowledgment{a.common.acknowledged});
  } else {
    prober = std::make_unique<engine::StubProber>(p.target_capabilities);
    sink = std::make_unique<engine::DryRunSink>();
  }
  auto events_of = [&] {
    if (auto* d = dynamic_cast<engine::DryRunSink*>(sink.get())) return d->events();
    return dynamic_cast<engine::LiveSink*>(sink.get())->executed();
  };
  try {
    const auto report = engine::downgrade_probe(a.target, *sink, *prober, !a.not_h3_only);
    write_text(out_dir / "downgrade.json", report.to_json() + "\n");
    write_events(out_dir / "events.jsonl", events_of());
    out << report.to_json() << '\n';
    return kSuccess;
  } catch (const engine::ProbeError& e) {
    write_text(out_dir / "downgrade.json", e.partial_report().to_json() + "\n");
    write_events(out_dir / "events.jsonl", events_of());
    throw;
  }
}

int run_attack_cmd(const AttackArgs& a, std::ostream& out) {
  const bool live = live_mode(a.common);
  const auto kind = parse_kind(a.kind);
  const auto params = attack_params(a, kind);
  Endpoint::parse(a.target);
  const fs::path dir = output_dir(a.common);
  if (kind == engine::AttackKind::DowngradeProbe) return run_downgrade(a, params, live, dir, out);

  const auto window = engine::standalone_window(params, a.target);
  engine::AttackPlan plan;
  std::vector<engine::AttackEvent> events;
  bool truncated = false;
  if (live) {
    SigintScope sigint;
    engine::PosixTransport transport;
    engine::LiveSink sink(transport, engine::TargetAcknowledgment{a.common.acknowledged},
                          engine::LiveOptions{a.time_scale, &g_interrupted});
    plan = engine::run_attack(kind, params, window, sink);
    events = sink.executed();
    truncated = g_interrupted.load() || sink.report().truncated;
    out << "executed " << sink.report().executed << " actions, " << sink.report().failed
        << " failed" << (truncated ? " (interrupted)" : "") << '\n';
  } else {
    engine::DryRunSink sink;
    plan = engine::run_attack(kind, params, window, sink);
    events = sink.events();
  }
  write_events(dir / "events.jsonl", events, truncated);
  json meta{{"kind", engine::to_string(kind)},
            {"taxonomy", engine::to_string(engine::taxonomy(kind))},
            {"mode", live ? "live" : "dry-run"},
            {"window", {{"start", window.start}, {"end", window.end}, {"target", window.target}}},
            {"params", params_json(params)},
            {"metadata", plan.metadata},
            {"events", plan.events.size()}};
  write_text(dir / "plan.json", meta.dump(2) + "\n");
  out << engine::to_string(kind) << ": " << plan.events.size() << " events over ["
      << format_double(window.start) << ", " << format_double(window.end) << ") -> "
      << (dir / "events.jsonl").string() << '\n';
  return truncated ? kRuntime : kSuccess;
}

// ---- campaign ---------------------------------------------------------------

struct CampaignArgs {
  Common common;
  std::string kind;
  std::string config;
  std::vector<std::string> servers;
  CLI::Option* clients_opt = nullptr;
  std::size_t clients = 13;
  bool low_first = false;
  CLI::Option* parallelism_opt = nullptr;
  std::size_t parallelism = 0;
  CLI::Option* remap_opt = nullptr;
  double remap_at = 0;
  double time_scale = 1.0;
  CLI::Option* seed_opt = nullptr;
};

int run_campaign_cmd(CampaignArgs& a, std::ostream& out) {
  campaign::CampaignConfig cfg;
  if (!a.config.empty()) cfg = campaign::load_campaign_config(a.config);
  if (cfg.mode && !a.common.live && !a.common.dry_run) {
    if (*cfg.mode == "live") {
      a.common.live = true;
    } else if (*cfg.mode != "dry-run" && *cfg.mode != "dry_run") {
      throw ParameterError("config mode must be dry-run or live");
    }
  }
  const bool live = live_mode(a.common);
  const auto kind = a.kind.empty() ? cfg.attack : std::optional(parse_kind(a.kind));
  if (!kind) throw ParameterError("no attack kind given");
  if (a.seed_opt->count() == 0 && cfg.seed) a.common.seed = *cfg.seed;
  auto servers = a.servers.empty() ? cfg.servers : campaign::select_servers(cfg.servers, a.servers);

  campaign::ScheduleOptions sopts;
  sopts.high_variant_first = cfg.high_variant_first && !a.low_first;
  const auto schedule = campaign::build_schedule(*kind, servers, sopts);

  campaign::BenignClientModel model;
  model.seed = a.common.seed;
  if (cfg.benign_clients) model.client_count = *cfg.benign_clients;
  if (a.clients_opt->count() > 0) model.client_count = a.clients;
  if (a.remap_opt->count() > 0) model.address_remap_at = a.remap_at;

  campaign::CampaignOptions opts;
  opts.seed = a.common.seed;
  if (a.parallelism_opt->count() > 0) {
    opts.params = engine::default_params(*kind);
    opts.params->parallelism = a.parallelism;
  }
  const fs::path dir = output_dir(a.common);
  if (live) {
    SigintScope sigint;
    engine::PosixTransport transport;
    engine::LiveSink sink(transport, engine::TargetAcknowledgment{a.common.acknowledged},
                          engine::LiveOptions{a.time_scale, &g_interrupted});
    const auto log = campaign::run_campaign(schedule, model, sink, opts);
    log.write(dir);
    const bool truncated = g_interrupted.load() || sink.report().truncated;
    write_events(dir / "executed.jsonl", sink.executed(), truncated);
    out << "campaign " << engine::to_string(*kind) << ": executed " << sink.report().executed
        << " actions, " << sink.report().failed << " failed\n";
    return truncated ? kRuntime : kSuccess;
  }
  engine::DryRunSink sink;
  const auto log = campaign::run_campaign(schedule, model, sink, opts);
  log.write(dir);
  std::size_t attack_events = 0;
  for (const auto& ev : log.events) attack_events += *ev.find("label") != "Normal" ? 1 : 0;
  out << "campaign " << engine::to_string(*kind) << ": " << log.events.size() << " events ("
      << attack_events << " attack) over " << format_double(schedule.total) << " s -> "
      << dir.string() << '\n';
  return kSuccess;
}

// ---- label / features -------------------------------------------------------

struct InputArgs {
  std::string events;
  std::string pcap;
  std::string manifest;
};

void add_inputs(CLI::App& cmd, InputArgs& in) {
  auto* ev = cmd.add_option("--events", in.events, "Engine event log (JSON lines)");
  auto* pc = cmd.add_option("--pcap", in.pcap, "Classic pcap capture");
  ev->excludes(pc);
  cmd.add_option("--manifest", in.manifest, "Campaign manifest.json")->required();
}

std::vector<capture::PacketRecord> load_records(const InputArgs& in, std::ostream& out) {
  if (!in.events.empty()) {
    std::ifstream f(in.events, std::ios::binary);
    if (!f) throw IngestError("cannot open " + in.events);
    const auto log = engine::read_event_log(f);
    if (log.truncated) out << "note: event log is truncated (interrupted run)\n";
    return capture::records_from_events(log.events);
  }
  if (!in.pcap.empty()) {
    auto r = capture::ingest_pcap(fs::path(in.pcap));
    if (r.skipped_non_ip + r.skipped_truncated + r.skipped_other > 0) {
      out << "skipped " << r.skipped_non_ip << " non-IP, " << r.skipped_truncated
          << " truncated, " << r.skipped_other << " non-TCP/UDP packets\n";
    }
    return std::move(r.records);
  }
  throw ParameterError("one of --events or --pcap is required");
}

std::string file_safe(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return s;
}

struct LabelArgs {
  Common common;
  InputArgs in;
  bool per_server = false;
  bool write_pcap = false;
};

int run_label_cmd(const LabelArgs& a, std::ostream& out) {
  const auto records = load_records(a.in, out);
  const auto manifest = campaign::CampaignManifest::from_json(read_json(a.in.manifest));
  const fs::path dir = output_dir(a.common);
  const auto result = capture::label_packets(records, manifest);
  capture::write_labeled_csv(dir / "labeled.csv", result.packets);
  if (a.write_pcap) capture::write_pcap(dir / "capture.pcap", records);
  if (a.per_server) {
    for (const auto& [server, part] :
         capture::split_per_server(records, manifest.schedule.servers())) {
      const auto labeled = capture::label_packets(part, manifest);
      capture::write_labeled_csv(dir / ("labeled_" + file_safe(server) + ".csv"), labeled.packets);
      if (a.write_pcap) capture::write_pcap(dir / ("capture_" + file_safe(server) + ".pcap"), part);
    }
  }
  std::size_t malicious = 0;
  for (const auto& p : result.packets) malicious += p.cls != features::ClassLabel::Normal ? 1 : 0;
  out << "labeled " << result.packets.size() << " packets (" << malicious << " malicious) -> "
      << (dir / "labeled.csv").string() << '\n';
  if (result.outside_horizon > 0) {
    out << "warning: " << result.outside_horizon
        << " packets outside the manifest horizon labeled Normal\n";
  }
  return kSuccess;
}

struct FeaturesArgs {
  Common common;
  InputArgs in;
  std::string split = "0.6,0.4";
  std::string registry;
  std::string schema = "canonical";
};

int run_features_cmd(const FeaturesArgs& a, std::ostream& out) {
  const auto schema = features::load_schema(a.registry, a.schema);
  const auto records = load_records(a.in, out);
  const auto manifest = campaign::CampaignManifest::from_json(read_json(a.in.manifest));
  const auto labeled = capture::label_packets(records, manifest);
  const auto rows = features::extract_rows(labeled.packets, schema);
  const auto dataset =
      features::build_dataset(rows, schema, {parse_fractions(a.split), a.common.seed});
  const fs::path dir = output_dir(a.common);
  const auto paths = features::write_dataset(dataset, dir);
  json registry{{"schemas", {{a.schema, schema.to_json()}}}};
  write_text(dir / "schema_registry.json", registry.dump(2) + "\n");
  for (const auto& w : dataset.warnings) out << "warning: " << w << '\n';
  for (std::size_t i = 0; i < paths.size(); ++i) {
    out << paths[i].string() << ": " << dataset.splits[i].size() << " rows\n";
  }
  return kSuccess;
}

// ---- detect -----------------------------------------------------------------

struct DetectArgs {
  Common common;
  std::string train;
  std::string test;
  std::string val;
  std::string model;
  detect::TreeParams params;
};

detect::FeatureMatrix load_matrix(const std::string& path) {
  if (path.empty()) throw ParameterError("a feature CSV path is required");
  return detect::FeatureMatrix::from_table(features::read_feature_csv(fs::path(path)));
}

detect::MetricsReport evaluate_tree(const detect::DecisionTree& tree,
                                    const detect::FeatureMatrix& test, std::ostream& out) {
  const auto pred = tree.predict(test);
  auto report = detect::evaluate(pred.labels, test.labels);
  std::vector<std::string> warnings;
  report.auc = detect::auc_ovr(pred.scores, test.labels, &warnings);
  report.model = "DT";
  for (const auto& w : warnings) out << "warning: " << w << '\n';
  return report;
}

int run_detect_train(const DetectArgs& a, std::ostream& out) {
  const auto train = load_matrix(a.train);
  std::vector<std::string> warnings;
  const auto t0 = std::chrono::steady_clock::now();
  const auto tree = detect::DecisionTree::train(train, a.params, &warnings);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& w : warnings) out << "warning: " << w << '\n';
  const fs::path dir = output_dir(a.common);
  auto j = tree.to_json();
  j["train_time_s"] = seconds;
  write_text(dir / "tree.json", j.dump() + "\n");
  out << "tree: " << tree.leaf_count() << " leaves, depth " << tree.depth() << ", trained in "
      << format_fixed(seconds, 2) << " s -> " << (dir / "tree.json").string() << '\n';
  if (!a.test.empty()) {
    auto report = evaluate_tree(tree, load_matrix(a.test), out);
    report.train_time_s = seconds;
    write_text(dir / "metrics.json", report.to_json().dump(2) + "\n");
    out << detect::render_metrics_table({report}) << detect::render_confusion(report.confusion);
  }
  return kSuccess;
}

int run_detect_eval(const DetectArgs& a, std::ostream& out) {
  if (a.model.empty()) throw ParameterError("--model is required");
  const auto j = read_json(a.model);
  const auto tree = detect::DecisionTree::from_json(j);
  auto report = evaluate_tree(tree, load_matrix(a.test), out);
  report.train_time_s = j.value("train_time_s", 0.0);
  const fs::path dir = output_dir(a.common);
  write_text(dir / "metrics.json", report.to_json().dump(2) + "\n");
  write_text(dir / "metrics_table.md", detect::render_metrics_table({report}));
  out << detect::render_metrics_table({report}) << detect::render_confusion(report.confusion);
  return kSuccess;
}

int run_detect_anomaly(const DetectArgs& a, std::ostream& out) {
  const auto train = load_matrix(a.train);
  auto model = detect::anomaly_fit(train);
  const auto calibration = load_matrix(a.val.empty() ? a.train : a.val);
  const double threshold = detect::calibrate_threshold(model, calibration);
  const fs::path dir = output_dir(a.common);
  write_text(dir / "anomaly.json", model.to_json().dump() + "\n");
  json report{{"threshold", threshold}};
  if (!a.test.empty()) {
    const auto test = load_matrix(a.test);
    const auto r = detect::evaluate_anomaly(model, test);
    report["test"] = r.to_json();
    out << "threshold " << format_double(threshold) << ": precision "
        << format_fixed(100 * r.precision, 2) << ", recall " << format_fixed(100 * r.recall, 2)
        << ", F1 " << format_fixed(100 * r.f1, 2) << ", accuracy "
        << format_fixed(100 * r.accuracy, 2) << '\n';
    std::ofstream scores(dir / "anomaly_scores.csv", std::ios::binary);
    scores << "score,label\n";
    for (std::size_t i = 0; i < test.rows; ++i) {
      scores << format_double(detect::anomaly_score(model, test.row(i))) << ','
             << features::to_string(test.labels[i]) << '\n';
    }
  } else {
    out << "threshold " << format_double(threshold) << '\n';
  }
  write_text(dir / "anomaly_report.json", report.dump(2) + "\n");
  return kSuccess;
}

// ---- footprint / stats ------------------------------------------------------

struct FootprintArgs {
  Common common;
  std::string labeled;
  double bucket = 1.0;
  bool svg = false;
  std::string server;
  std::string manifest;
  std::string title;
};

int run_footprint_cmd(const FootprintArgs& a, std::ostream& out) {
  auto packets = capture::read_labeled_csv(fs::path(a.labeled));
  std::string suffix;
  if (!a.server.empty()) {
    const auto servers =
        a.manifest.empty()
            ? campaign::default_servers()
            : campaign::CampaignManifest::from_json(read_json(a.manifest)).schedule.servers();
    const auto chosen = campaign::select_servers(servers, {a.server});
    const std::string host = Endpoint::parse(chosen.front().address).host;
    std::erase_if(packets, [&](const capture::LabeledPacket& p) {
      return p.record.src != host && p.record.dst != host;
    });
    suffix = "_" + file_safe(chosen.front().name);
  }
  const auto series = capture::footprint(packets, a.bucket);
  const fs::path dir = output_dir(a.common);
  {
    std::ofstream f(dir / ("footprint" + suffix + ".csv"), std::ios::binary);
    if (!f) throw Error("cannot write footprint CSV");
    capture::write_footprint_csv(f, series);
  }
  if (a.svg) {
    write_text(dir / ("footprint" + suffix + ".svg"),
               capture::render_footprint_svg(series, a.title.empty() ? "PPS footprint" : a.title));
  }
  out << "footprint: " << series.t.size() << " buckets, " << series.total() << " packets -> "
      << (dir / ("footprint" + suffix + ".csv")).string() << '\n';
  return kSuccess;
}

struct StatsArgs {
  Common common;
  std::string in;
  std::string manifest;
};

int run_stats_cmd(const StatsArgs& a, std::ostream& out) {
  std::ifstream f(a.in, std::ios::binary);
  if (!f) throw IngestError("cannot open " + a.in);
  std::string header;
  std::getline(f, header);
  f.clear();
  f.seekg(0);
  capture::TrafficStats stats;
  if (header == "server,normal,malicious") {
    stats = capture::stats_from_counts(capture::read_counts_csv(f));
  } else {
    const auto servers =
        a.manifest.empty()
            ? campaign::default_servers()
            : campaign::CampaignManifest::from_json(read_json(a.manifest)).schedule.servers();
    stats = capture::compute_stats(capture::read_labeled_csv(f), servers);
  }
  out << capture::render_stats(stats);
  if (!a.common.out.empty() || std::getenv(kOutEnv) != nullptr) {
    const fs::path dir = output_dir(a.common);
    std::ofstream s(dir / "stats.csv", std::ios::binary);
    capture::write_stats_csv(s, stats);
  }
  return kSuccess;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"HTTP/3 attack lab: traffic planning, labeled datasets and detection baselines",
               "h3lab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  AttackArgs attack;
  auto* attack_cmd = app.add_subcommand("attack", "Plan (or run) one attack against one target");
  attack_cmd->add_option("kind", attack.kind, "Attack kind, e.g. http3-flood")->required();
  attack_cmd->add_option("--target", attack.target, "host:port");
  add_mode_flags(*attack_cmd, attack.common);
  add_seed_out(*attack_cmd, attack.common);
  attack.parallelism_opt = attack_cmd->add_option("--parallelism", attack.parallelism);
  attack.duration_opt = attack_cmd->add_option("--duration", attack.duration, "Seconds");
  attack.timeout_opt = attack_cmd->add_option("--timeout", attack.timeout, "Per-request seconds");
  attack.period_opt = attack_cmd->add_option("--period", attack.period, "Request period, seconds");
  attack.payload_opt = attack_cmd->add_option("--payload-len", attack.payload_len);
  attack_cmd->add_option("--variant", attack.variant, "Smuggling variant: cl_te, te_cl, h2c_upgrade");
  attack_cmd->add_option("--settings", attack.settings, "SETTINGS preset: low, high, defaults, none");
  attack.capacity_opt = attack_cmd->add_option("--qpack-capacity", attack.capacity);
  attack.blocked_opt = attack_cmd->add_option("--blocked-streams", attack.blocked);
  attack.max_conn_opt = attack_cmd->add_option("--max-total-connections", attack.max_conn);
  attack.max_streams_opt = attack_cmd->add_option("--max-concurrent-streams", attack.max_streams);
  attack.pause_opt = attack_cmd->add_option("--pause-period", attack.pause_period);
  attack_cmd->add_option("--capabilities", attack.capabilities, "Target versions, e.g. h1.1,h3");
  attack_cmd->add_option("--time-scale", attack.time_scale, "Live: wall seconds per plan second");
  attack_cmd->add_flag("--not-h3-only", attack.not_h3_only,
                       "Downgrade probe: the target is not configured HTTP/3-only");

  CampaignArgs camp;
  auto* camp_cmd = app.add_subcommand("campaign", "Full timeline: normal phases and rotation");
  camp_cmd->add_option("kind", camp.kind, "Attack kind (or from --config)");
  camp_cmd->add_option("--config", camp.config, "Campaign JSON config");
  camp_cmd->add_option("--servers", camp.servers, "Subset of servers by name")->delimiter(',');
  add_mode_flags(*camp_cmd, camp.common);
  camp.seed_opt = camp_cmd->add_option("--seed", camp.common.seed, "Seed for every random draw");
  camp_cmd->add_option("--out", camp.common.out, "Output directory");
  camp.clients_opt = camp_cmd->add_option("--benign-clients", camp.clients);
  camp_cmd->add_flag("--low-first", camp.low_first,
                     "Tables/streams: low SETTINGS variant in the first cycle");
  camp.parallelism_opt = camp_cmd->add_option("--parallelism", camp.parallelism);
  camp.remap_opt = camp_cmd->add_option("--remap-at", camp.remap_at,
                                        "Benign clients change address at this time");
  camp_cmd->add_option("--time-scale", camp.time_scale);

  LabelArgs label;
  auto* label_cmd = app.add_subcommand("label", "Label a capture or event log against a manifest");
  add_inputs(*label_cmd, label.in);
  add_seed_out(*label_cmd, label.common);
  label_cmd->add_flag("--per-server", label.per_server, "Also write one labeled CSV per server");
  label_cmd->add_flag("--write-pcap", label.write_pcap, "Also export the records as pcap");

  FeaturesArgs feat;
  auto* feat_cmd = app.add_subcommand("features", "Build the preprocessed feature CSVs");
  add_inputs(*feat_cmd, feat.in);
  add_seed_out(*feat_cmd, feat.common);
  feat_cmd->add_option("--split", feat.split, "Stratified fractions, e.g. 0.6,0.4 or 0.5,0.3,0.2");
  feat_cmd->add_option("--schema-registry", feat.registry, "Schema registry JSON");
  feat_cmd->add_option("--schema", feat.schema, "Schema name in the registry");

  DetectArgs det;
  auto* det_cmd = app.add_subcommand("detect", "Decision tree and anomaly baselines");
  det_cmd->require_subcommand(1);
  auto* train_cmd = det_cmd->add_subcommand("train", "Train a decision tree");
  train_cmd->add_option("--train", det.train)->required();
  train_cmd->add_option("--test", det.test, "Evaluate on this CSV after training");
  train_cmd->add_option("--max-depth", det.params.max_depth);
  train_cmd->add_option("--max-leaf-nodes", det.params.max_leaf_nodes);
  train_cmd->add_option("--min-samples-leaf", det.params.min_samples_leaf);
  train_cmd->add_option("--min-samples-split", det.params.min_samples_split);
  add_seed_out(*train_cmd, det.common);
  auto* eval_cmd = det_cmd->add_subcommand("eval", "Evaluate a saved tree");
  eval_cmd->add_option("--model", det.model)->required();
  eval_cmd->add_option("--test", det.test)->required();
  add_seed_out(*eval_cmd, det.common);
  auto* anomaly_cmd = det_cmd->add_subcommand("anomaly", "Centroid reconstruction-error detector");
  anomaly_cmd->add_option("--train", det.train)->required();
  anomaly_cmd->add_option("--val", det.val, "Calibration CSV (default: the training CSV)");
  anomaly_cmd->add_option("--test", det.test);
  add_seed_out(*anomaly_cmd, det.common);

  FootprintArgs fp;
  auto* fp_cmd = app.add_subcommand("footprint", "Packets-per-second series from a labeled CSV");
  fp_cmd->add_option("--labeled", fp.labeled)->required();
  fp_cmd->add_option("--bucket", fp.bucket, "Bucket width in seconds");
  fp_cmd->add_flag("--svg", fp.svg, "Also render a static SVG plot");
  fp_cmd->add_option("--server", fp.server, "Only packets to/from this server");
  fp_cmd->add_option("--manifest", fp.manifest, "Manifest holding the server addresses");
  fp_cmd->add_option("--title", fp.title);
  add_seed_out(*fp_cmd, fp.common);

  StatsArgs st;
  auto* st_cmd = app.add_subcommand("stats", "Malicious/normal ratios per attack and server");
  st_cmd->add_option("--in", st.in, "Labeled CSV or server,normal,malicious counts CSV")
      ->required();
  st_cmd->add_option("--manifest", st.manifest, "Manifest holding the server addresses");
  add_seed_out(*st_cmd, st.common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (attack_cmd->parsed()) return run_attack_cmd(attack, out);
    if (camp_cmd->parsed()) return run_campaign_cmd(camp, out);
    if (label_cmd->parsed()) return run_label_cmd(label, out);
    if (feat_cmd->parsed()) return run_features_cmd(feat, out);
    if (train_cmd->parsed()) return run_detect_train(det, out);
    if (eval_cmd->parsed()) return run_detect_eval(det, out);
    if (anomaly_cmd->parsed()) return run_detect_anomaly(det, out);
    if (fp_cmd->parsed()) return run_footprint_cmd(fp, out);
    if (st_cmd->parsed()) return run_stats_cmd(st, out);
  } catch (const SafetyError& e) {
    err << "safety: " << e.what() << '\n';
    return kSafety;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const MappingError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  err << app.help();
  return kUsage;
}

int dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace h3lab::cli
