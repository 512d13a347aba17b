#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace h3lab::wire {

/// Deterministic fuzz bytes: successive SplitMix64(seed) outputs written
/// little-endian, truncated to `length`. A pure function of its inputs.
std::vector<std::uint8_t> gen_fuzz_payload(std::uint64_t seed, std::size_t length);

/// `n` zero bytes (the flood request body).
std::vector<std::uint8_t> null_body(std::size_t n);

}  // namespace h3lab::wire
