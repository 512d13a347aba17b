#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace h3lab::wire {

// QUIC variable-length integers. The two most significant bits of the
// first byte carry the encoded length:
//
//   00 -> 1 byte  (6 usable bits)
//   01 -> 2 bytes (14 usable bits)
//   10 -> 4 bytes (30 usable bits)
//   11 -> 8 bytes (62 usable bits)

inline constexpr std::uint64_t kVarIntMax = (std::uint64_t{1} << 62) - 1;

/// Minimal encoded length for `value`; throws RangeError above kVarIntMax.
std::size_t varint_length(std::uint64_t value);

std::vector<std::uint8_t> encode_varint(std::uint64_t value);

/// Appends the minimal encoding of `value` to `out`.
void append_varint(std::vector<std::uint8_t>& out, std::uint64_t value);

struct DecodedVarInt {
  std::uint64_t value = 0;
  std::size_t consumed = 0;

  friend bool operator==(const DecodedVarInt&, const DecodedVarInt&) = default;
};

/// Decodes one varint from the front of `bytes`. Throws DecodeError on
/// empty or truncated input.
DecodedVarInt decode_varint(std::span<const std::uint8_t> bytes);

}  // namespace h3lab::wire
