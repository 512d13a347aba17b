#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "h3lab/features/class_label.hpp"

namespace h3lab::features {

struct SplitResult {
  /// Row indices per subset, ascending.
  std::vector<std::vector<std::size_t>> subsets;
  /// e.g. a class with fewer rows than subsets.
  std::vector<std::string> warnings;
};

/// Per class, shuffles with the seed and hands each subset floor(n * f)
/// rows, the leftovers going to the largest remainders, so every subset is
/// within one row of its exact share. Throws ParameterError unless the
/// fractions are positive and sum to 1.
SplitResult stratified_split(const std::vector<ClassLabel>& labels,
                             const std::vector<double>& fractions, std::uint64_t seed);

template <typename Row>
std::vector<std::vector<Row>> take_subsets(const std::vector<Row>& rows, const SplitResult& split) {
  std::vector<std::vector<Row>> out;
  for (const auto& subset : split.subsets) {
    auto& part = out.emplace_back();
    part.reserve(subset.size());
    for (auto i : subset) part.push_back(rows[i]);
  }
  return out;
}

}  // namespace h3lab::features
