#include "h3lab/engine/attack_params.hpp"

#include <string>

#include "h3lab/common/error.hpp"

namespace h3lab::engine {

std::string_view to_string(SmuggleVariant v) noexcept {
  switch (v) {
    case SmuggleVariant::cl_te: return "cl_te";
    case SmuggleVariant::te_cl: return "te_cl";
    case SmuggleVariant::h2c_upgrade: return "h2c_upgrade";
  }
  return "?";
}

SmuggleVariant parse_smuggle_variant(std::string_view text) {
  if (text == "cl_te") return SmuggleVariant::cl_te;
  if (text == "te_cl") return SmuggleVariant::te_cl;
  if (text == "h2c_upgrade") return SmuggleVariant::h2c_upgrade;
  throw ParameterError("unknown smuggle variant '" + std::string(text) + "'");
}

AttackParams default_params(AttackKind kind) {
  AttackParams p;
  switch (kind) {
    case AttackKind::Http3Flood:
      p.parallelism = 10;
      p.per_request_timeout = 1.0;
      p.payload_len = 26;
      break;
    case AttackKind::Http3Loris:
      // attacker + 3 local bots + 6 remote bots
      p.parallelism = 10;
      p.per_request_timeout = 5.0;
      p.request_period = 5.0;
      p.payload_len = 32;
      break;
    case AttackKind::SlowRatePost:
      p.parallelism = 40;
      p.per_request_timeout = 5.0;
      p.payload_len = 32;
      break;
    case AttackKind::Http3TablesStreams:
      p.parallelism = 100;
      p.per_request_timeout = 5.0;
      p.duration = 120.0;
      p.settings = wire::kSettingsVariantLow;
      break;
    case AttackKind::QuicFlood:
      p.parallelism = 3;
      p.per_request_timeout = 1.0;
      p.request_period = 0.05;
      break;
    case AttackKind::QuicLoris:
      // attacker + all 12 bots
      p.parallelism = 13;
      p.per_request_timeout = 5.0;
      p.request_period = 5.0;
      p.payload_len = 32;
      break;
    case AttackKind::QuicEnc:
      p.per_request_timeout = 1.0;
      p.request_period = 0.1;
      p.payload_len = 16;
      break;
    case AttackKind::Fuzzing:
      p.per_request_timeout = 1.0;
      p.request_period = 0.02;
      p.payload_len = 1200;  // maximum datagram payload
      break;
    case AttackKind::HttpSmuggle:
      p.per_request_timeout = 5.0;
      p.request_period = 1.0;
      p.payload_len = 32;
      break;
    case AttackKind::Http2Concurrent:
      p.parallelism = 10;
      p.per_request_timeout = 5.0;
      p.request_period = 0.1;
      break;
    case AttackKind::Http2Pause:
      p.parallelism = 10;
      p.per_request_timeout = 5.0;
      p.pause_period = 1.0;
      break;
    case AttackKind::DowngradeProbe:
      p.per_request_timeout = 5.0;
      break;
  }
  return p;
}

void validate(const AttackParams& params) {
  if (params.parallelism == 0) throw ParameterError("parallelism must be >= 1");
  if (!(params.duration > 0.0)) throw ParameterError("duration must be > 0");
  if (!(params.per_request_timeout > 0.0)) throw ParameterError("timeout must be > 0");
  if (params.request_period < 0.0) throw ParameterError("request period must be >= 0");
  if (!(params.pause_period > 0.0)) throw ParameterError("pause period must be > 0");
  if (params.max_total_connections == 0) {
    throw ParameterError("max_total_connections must be >= 1");
  }
}

}  // namespace h3lab::engine
