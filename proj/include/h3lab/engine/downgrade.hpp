#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <string>

#include "h3lab/common/error.hpp"
#include "h3lab/common/net.hpp"
#include "h3lab/engine/protocol.hpp"
#include "h3lab/engine/sink.hpp"

namespace h3lab::engine {

struct DowngradeReport {
  std::string target;
  bool http3_only_configured = true;
  Capabilities accepted_versions;
  /// Versions that could not be probed at all (network unreachable).
  Capabilities unreachable_versions;

  /// TCP-based versions accepted by a host configured for HTTP/3 only.
  bool downgrade_detected() const noexcept {
    return http3_only_configured &&
           (accepted_versions.has(HttpVersion::h1_1) || accepted_versions.has(HttpVersion::h2));
  }

  std::string to_json() const;

  friend bool operator==(const DowngradeReport&, const DowngradeReport&) = default;
};

/// Network unreachable during a probe; carries what was learned so far.
class ProbeError : public TransportError {
 public:
  ProbeError(const std::string& what, DowngradeReport partial)
      : TransportError(what), partial_(std::move(partial)) {}
  const DowngradeReport& partial_report() const noexcept { return partial_; }

 private:
  DowngradeReport partial_;
};

enum class ProbeOutcome { accepted, refused, unreachable };

std::string_view to_string(ProbeOutcome outcome) noexcept;

class CapabilityProber {
 public:
  virtual ~CapabilityProber() = default;
  virtual ProbeOutcome probe(const Endpoint& target, HttpVersion version) = 0;
  /// Whether probing puts packets on a real network.
  virtual bool is_live() const noexcept = 0;
};

/// Static capability descriptor for tests and dry runs.
class StubProber final : public CapabilityProber {
 public:
  explicit StubProber(Capabilities accepted, Capabilities unreachable = {})
      : accepted_(accepted), unreachable_(unreachable) {}

  ProbeOutcome probe(const Endpoint& target, HttpVersion version) override;
  bool is_live() const noexcept override { return false; }

 private:
  Capabilities accepted_;
  Capabilities unreachable_;
};

/// Real probes over TCP: an HTTP/1.1 HEAD and an HTTP/2 prior-knowledge
/// preface, both cleartext. HTTP/3 needs a QUIC stack, so it is delegated to
/// `h3_check` when one is supplied and reported as refused otherwise.
class SocketProber final : public CapabilityProber {
 public:
  using H3Check = std::function<ProbeOutcome(const Endpoint&)>;

  explicit SocketProber(std::chrono::milliseconds timeout = std::chrono::milliseconds(3000),
                        H3Check h3_check = {})
      : timeout_(timeout), h3_check_(std::move(h3_check)) {}

  ProbeOutcome probe(const Endpoint& target, HttpVersion version) override;
  bool is_live() const noexcept override { return true; }

 private:
  std::chrono::milliseconds timeout_;
  H3Check h3_check_;
};

/// Probes HTTP/1.1, then HTTP/2, then HTTP/3 and records one event per
/// probe on `sink`. A live prober requires a live (acknowledged) sink.
/// Throws ProbeError with the partial report when the target is
/// unreachable.
DowngradeReport downgrade_probe(const std::string& target, TrafficSink& sink,
                                CapabilityProber& prober, bool http3_only_configured = true);

}  // namespace h3lab::engine
