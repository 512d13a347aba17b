#include "h3lab/features/class_label.hpp"

#include <string>

#include "h3lab/common/error.hpp"

namespace h3lab::features {

using engine::AttackKind;

std::string_view to_string(ClassLabel label) noexcept {
  switch (label) {
    case ClassLabel::Normal: return "Normal";
    case ClassLabel::DDoSFlooding: return "DDoS-flooding";
    case ClassLabel::DDoSLoris: return "DDoS-loris";
    case ClassLabel::TransportLayer: return "Transport-layer";
    case ClassLabel::Http2Attacks: return "HTTP/2 attacks";
  }
  return "Normal";
}

std::optional<ClassLabel> parse_class_label(std::string_view text) noexcept {
  for (auto c : kClassOrder) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

ClassLabel map_class(AttackKind kind) {
  switch (kind) {
    case AttackKind::Http3Flood:
    case AttackKind::Http3TablesStreams:
    case AttackKind::QuicFlood:
      return ClassLabel::DDoSFlooding;
    case AttackKind::Http3Loris:
    case AttackKind::QuicLoris:
    case AttackKind::SlowRatePost:
      return ClassLabel::DDoSLoris;
    case AttackKind::Fuzzing:
    case AttackKind::QuicEnc:
      return ClassLabel::TransportLayer;
    case AttackKind::HttpSmuggle:
    case AttackKind::Http2Concurrent:
    case AttackKind::Http2Pause:
      return ClassLabel::Http2Attacks;
    case AttackKind::DowngradeProbe:
      break;
  }
  throw MappingError(std::string(engine::to_string(kind)) + " is a probe, not a dataset class");
}

ClassLabel map_class(std::string_view label) {
  if (label == "Normal") return ClassLabel::Normal;
  const auto kind = engine::parse_attack_kind(label);
  if (!kind) throw MappingError("unknown label: " + std::string(label));
  return map_class(*kind);
}

}  // namespace h3lab::features
