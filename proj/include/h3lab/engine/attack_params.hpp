#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "h3lab/engine/attack_kind.hpp"
#include "h3lab/engine/protocol.hpp"
#include "h3lab/wire/settings_frame.hpp"

namespace h3lab::engine {

enum class SmuggleVariant { cl_te, te_cl, h2c_upgrade };

std::string_view to_string(SmuggleVariant v) noexcept;
/// Throws ParameterError for anything but cl_te / te_cl / h2c_upgrade.
SmuggleVariant parse_smuggle_variant(std::string_view text);

struct AttackParams {
  std::size_t parallelism = 1;
  /// Seconds before a request/connection is cut off.
  double per_request_timeout = 1.0;
  /// Seconds between requests of one worker; 0 means back-to-back
  /// (reissue at the timeout).
  double request_period = 0.0;
  std::size_t payload_len = 0;
  std::optional<wire::SettingsFrame> settings;
  /// Window length for a standalone run, seconds.
  double duration = 60.0;
  std::uint64_t seed = 0;

  // Kind-specific knobs.
  SmuggleVariant smuggle_variant = SmuggleVariant::cl_te;
  std::uint64_t max_total_connections = 100000;
  std::uint64_t max_concurrent_streams = 100000;
  double pause_period = 1.0;
  /// What the target speaks; drives the HTTP/1.1 fallback of the HTTP/2
  /// attacks.
  Capabilities target_capabilities = Capabilities::all();
};

/// Per-kind defaults (10 x 1 s curl workers for the flood, 40 x 5 s for
/// slow POST, 100 x 5 s aioquic connections for tables/streams, 5 s loris
/// period, 100K/100K HTTP/2 concurrency...).
AttackParams default_params(AttackKind kind);

/// Throws ParameterError on parallelism == 0, non-positive duration or
/// timeout, or negative periods.
void validate(const AttackParams& params);

}  // namespace h3lab::engine
