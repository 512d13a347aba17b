#include "h3lab/wire/settings_frame.hpp"

#include "h3lab/common/error.hpp"
#include "h3lab/wire/varint.hpp"

namespace h3lab::wire {

std::vector<std::uint8_t> build_settings_frame(const SettingsFrame& frame) {
  std::vector<std::uint8_t> payload;
  auto put = [&payload](std::uint64_t id, const std::optional<std::uint64_t>& value) {
    if (!value) return;
    append_varint(payload, id);
    append_varint(payload, *value);
  };
  put(kSettingQpackMaxTableCapacity, frame.max_table_capacity);
  put(kSettingMaxFieldSectionSize, frame.max_field_section_size);
  put(kSettingQpackBlockedStreams, frame.blocked_streams);

  std::vector<std::uint8_t> out;
  out.reserve(payload.size() + 3);
  append_varint(out, kSettingsFrameType);
  append_varint(out, payload.size());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

SettingsFrame parse_settings_frame(std::span<const std::uint8_t> bytes) {
  const auto type = decode_varint(bytes);
  if (type.value != kSettingsFrameType) throw DecodeError("not a SETTINGS frame");
  bytes = bytes.subspan(type.consumed);
  const auto length = decode_varint(bytes);
  bytes = bytes.subspan(length.consumed);
  if (bytes.size() < length.value) throw DecodeError("SETTINGS frame truncated");
  auto payload = bytes.first(length.value);

  SettingsFrame frame;
  while (!payload.empty()) {
    const auto id = decode_varint(payload);
    payload = payload.subspan(id.consumed);
    const auto value = decode_varint(payload);
    payload = payload.subspan(value.consumed);
    switch (id.value) {
      case kSettingQpackMaxTableCapacity: frame.max_table_capacity = value.value; break;
      case kSettingMaxFieldSectionSize: frame.max_field_section_size = value.value; break;
      case kSettingQpackBlockedStreams: frame.blocked_streams = value.value; break;
      default: break;
    }
  }
  return frame;
}

bool triggers_low_capacity_bug(const SettingsFrame& frame) noexcept {
  return frame.max_table_capacity.has_value() &&
         *frame.max_table_capacity < kQpackCapacityTriggerBound;
}

}  // namespace h3lab::wire
