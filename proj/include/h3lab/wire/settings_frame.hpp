#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace h3lab::wire {

inline constexpr std::uint64_t kSettingsFrameType = 0x04;

// Identifiers from the HTTP/3 (RFC 9114) and QPACK (RFC 9204) settings
// registries.
inline constexpr std::uint64_t kSettingQpackMaxTableCapacity = 0x01;
inline constexpr std::uint64_t kSettingMaxFieldSectionSize = 0x06;
inline constexpr std::uint64_t kSettingQpackBlockedStreams = 0x07;

/// Server implementations that dereference the QPACK encoder table when
/// the advertised capacity is below this value crash (the lsquic fix zeroes
/// any smaller capacity).
inline constexpr std::uint64_t kQpackCapacityTriggerBound = 32;

struct SettingsFrame {
  std::optional<std::uint64_t> max_table_capacity;
  std::optional<std::uint64_t> blocked_streams;
  std::optional<std::uint64_t> max_field_section_size;

  friend bool operator==(const SettingsFrame&, const SettingsFrame&) = default;
};

/// Tampered low values used by the tables/streams attack.
inline constexpr SettingsFrame kSettingsVariantLow{16, 4, std::nullopt};
/// Tampered high values used by the tables/streams attack.
inline constexpr SettingsFrame kSettingsVariantHigh{409600, 1600, std::nullopt};
/// Values most servers default to.
inline constexpr SettingsFrame kSettingsDefaults{4096, 16, std::nullopt};

/// Serializes one SETTINGS frame: type, length, then (identifier, value)
/// varint pairs in ascending identifier order. Omitted parameters are not
/// written at all.
std::vector<std::uint8_t> build_settings_frame(const SettingsFrame& frame);

/// Parses a single SETTINGS frame. Unknown identifiers are skipped.
/// Throws DecodeError on a wrong frame type, bad length or truncation.
SettingsFrame parse_settings_frame(std::span<const std::uint8_t> bytes);

/// True iff the advertised QPACK capacity is strictly below 32.
bool triggers_low_capacity_bug(const SettingsFrame& frame) noexcept;

}  // namespace h3lab::wire
