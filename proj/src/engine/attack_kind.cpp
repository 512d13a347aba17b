#include "h3lab/engine/attack_kind.hpp"

#include <array>

namespace h3lab::engine {

namespace {

struct KindInfo {
  AttackKind kind;
  std::string_view name;
  TaxonomyTag tag;
};

constexpr std::array<KindInfo, 12> kKinds{{
    {AttackKind::Http3Flood, "http3-flood", TaxonomyTag::volume},
    {AttackKind::Http3Loris, "http3-loris", TaxonomyTag::slow_rate},
    {AttackKind::SlowRatePost, "slow-rate-post", TaxonomyTag::slow_rate},
    {AttackKind::Http3TablesStreams, "http3-tables-streams", TaxonomyTag::volume},
    {AttackKind::QuicFlood, "quic-flood", TaxonomyTag::volume},
    {AttackKind::QuicLoris, "quic-loris", TaxonomyTag::slow_rate},
    {AttackKind::QuicEnc, "quic-enc", TaxonomyTag::transport},
    {AttackKind::Fuzzing, "fuzzing", TaxonomyTag::transport},
    {AttackKind::HttpSmuggle, "http-smuggle", TaxonomyTag::http2_specific},
    {AttackKind::Http2Concurrent, "http2-concurrent", TaxonomyTag::http2_specific},
    {AttackKind::Http2Pause, "http2-pause", TaxonomyTag::http2_specific},
    {AttackKind::DowngradeProbe, "downgrade-probe", TaxonomyTag::probe},
}};

constexpr std::array<AttackKind, 12> kAll{
    AttackKind::Http3Flood,      AttackKind::Http3Loris,     AttackKind::SlowRatePost,
    AttackKind::Http3TablesStreams, AttackKind::QuicFlood,   AttackKind::QuicLoris,
    AttackKind::QuicEnc,         AttackKind::Fuzzing,        AttackKind::HttpSmuggle,
    AttackKind::Http2Concurrent, AttackKind::Http2Pause,     AttackKind::DowngradeProbe,
};

constexpr std::array<AttackKind, 10> kDataset{
    AttackKind::Http3Flood,  AttackKind::Fuzzing,     AttackKind::Http3Loris,
    AttackKind::Http3TablesStreams, AttackKind::QuicFlood, AttackKind::QuicLoris,
    AttackKind::QuicEnc,     AttackKind::HttpSmuggle, AttackKind::Http2Concurrent,
    AttackKind::Http2Pause,
};

}  // namespace

std::string_view to_string(AttackKind kind) noexcept {
  for (const auto& info : kKinds) {
    if (info.kind == kind) return info.name;
  }
  return "?";
}

std::optional<AttackKind> parse_attack_kind(std::string_view name) noexcept {
  for (const auto& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

std::string_view to_string(TaxonomyTag tag) noexcept {
  switch (tag) {
    case TaxonomyTag::volume: return "volume";
    case TaxonomyTag::slow_rate: return "slow-rate";
    case TaxonomyTag::transport: return "transport";
    case TaxonomyTag::http2_specific: return "http2-specific";
    case TaxonomyTag::probe: return "probe";
  }
  return "?";
}

TaxonomyTag taxonomy(AttackKind kind) noexcept {
  for (const auto& info : kKinds) {
    if (info.kind == kind) return info.tag;
  }
  return TaxonomyTag::probe;
}

std::span<const AttackKind> all_attack_kinds() noexcept { return kAll; }

std::span<const AttackKind> dataset_attack_kinds() noexcept { return kDataset; }

}  // namespace h3lab::engine
