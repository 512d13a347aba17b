#pragma once

#include <cstdint>
#include <string_view>

namespace h3lab {

/// SplitMix64 generator (Steele, Lea & Flood). Output is fully specified
/// by the seed, so every stream derived from it is reproducible across
/// compilers and platforms, unlike the std:: distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept;

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  bool chance(double p) noexcept { return uniform() < p; }

 private:
  std::uint64_t state_;
};

/// Derives an independent sub-seed for a named stream (e.g. one worker).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t index = 0) noexcept;

}  // namespace h3lab
