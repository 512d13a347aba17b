#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace h3lab::engine {

enum class AttackKind {
  Http3Flood,
  Http3Loris,
  SlowRatePost,
  Http3TablesStreams,
  QuicFlood,
  QuicLoris,
  QuicEnc,
  Fuzzing,
  HttpSmuggle,
  Http2Concurrent,
  Http2Pause,
  DowngradeProbe,
};

/// Metadata only; never drives behaviour.
enum class TaxonomyTag { volume, slow_rate, transport, http2_specific, probe };

/// Command-line / log name, e.g. "http3-flood".
std::string_view to_string(AttackKind kind) noexcept;
std::optional<AttackKind> parse_attack_kind(std::string_view name) noexcept;

std::string_view to_string(TaxonomyTag tag) noexcept;
TaxonomyTag taxonomy(AttackKind kind) noexcept;

std::span<const AttackKind> all_attack_kinds() noexcept;

/// The ten attacks that make up the labeled dataset.
std::span<const AttackKind> dataset_attack_kinds() noexcept;

}  // namespace h3lab::engine
