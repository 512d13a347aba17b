#include "h3lab/wire/varint.hpp"

#include <string>

#include "h3lab/common/error.hpp"

namespace h3lab::wire {

std::size_t varint_length(std::uint64_t value) {
  if (value < (std::uint64_t{1} << 6)) return 1;
  if (value < (std::uint64_t{1} << 14)) return 2;
  if (value < (std::uint64_t{1} << 30)) return 4;
  if (value <= kVarIntMax) return 8;
  throw RangeError("varint value " + std::to_string(value) + " exceeds 2^62-1");
}

void append_varint(std::vector<std::uint8_t>& out, std::uint64_t value) {
  const std::size_t len = varint_length(value);
  std::uint64_t prefix = 0;
  switch (len) {
    case 2: prefix = 0x4000; break;
    case 4: prefix = 0x80000000; break;
    case 8: prefix = 0xC000000000000000; break;
    default: break;
  }
  const std::uint64_t encoded = value | prefix;
  for (std::size_t i = len; i-- > 0;) {
    out.push_back(static_cast<std::uint8_t>(encoded >> (8 * i)));
  }
}

std::vector<std::uint8_t> encode_varint(std::uint64_t value) {
  std::vector<std::uint8_t> out;
  out.reserve(8);
  append_varint(out, value);
  return out;
}

DecodedVarInt decode_varint(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw DecodeError("varint: no input");
  const std::size_t len = std::size_t{1} << (bytes[0] >> 6);
  if (bytes.size() < len) {
    throw DecodeError("varint: truncated, need " + std::to_string(len) + " bytes, have " +
                      std::to_string(bytes.size()));
  }
  std::uint64_t value = bytes[0] & 0x3f;
  for (std::size_t i = 1; i < len; ++i) value = (value << 8) | bytes[i];
  return {value, len};
}

}  // namespace h3lab::wire
