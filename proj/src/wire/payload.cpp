#include "h3lab/wire/payload.hpp"

#include "h3lab/common/rng.hpp"

namespace h3lab::wire {

std::vector<std::uint8_t> gen_fuzz_payload(std::uint64_t seed, std::size_t length) {
  std::vector<std::uint8_t> out;
  out.reserve(length);
  SplitMix64 rng(seed);
  while (out.size() < length) {
    std::uint64_t word = rng.next();
    for (int i = 0; i < 8 && out.size() < length; ++i, word >>= 8) {
      out.push_back(static_cast<std::uint8_t>(word & 0xff));
    }
  }
  return out;
}

std::vector<std::uint8_t> null_body(std::size_t n) { return std::vector<std::uint8_t>(n, 0); }

}  // namespace h3lab::wire
