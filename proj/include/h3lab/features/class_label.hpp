#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "h3lab/engine/attack_kind.hpp"

namespace h3lab::features {

enum class ClassLabel { Normal, DDoSFlooding, DDoSLoris, TransportLayer, Http2Attacks };

inline constexpr std::size_t kClassCount = 5;

/// Fixed ordering used by confusion matrices and reports.
inline constexpr std::array<ClassLabel, kClassCount> kClassOrder{
    ClassLabel::Normal, ClassLabel::DDoSFlooding, ClassLabel::DDoSLoris,
    ClassLabel::TransportLayer, ClassLabel::Http2Attacks};

/// "Normal", "DDoS-flooding", "DDoS-loris", "Transport-layer", "HTTP/2 attacks".
std::string_view to_string(ClassLabel label) noexcept;
std::optional<ClassLabel> parse_class_label(std::string_view text) noexcept;

constexpr std::size_t class_index(ClassLabel label) noexcept {
  return static_cast<std::size_t>(label);
}

/// Throws MappingError for probe kinds.
ClassLabel map_class(engine::AttackKind kind);

/// Accepts "Normal" or an attack kind name; throws MappingError otherwise.
ClassLabel map_class(std::string_view label);

}  // namespace h3lab::features
