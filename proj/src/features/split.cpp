#include "h3lab/features/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "h3lab/common/error.hpp"
#include "h3lab/common/rng.hpp"

namespace h3lab::features {

SplitResult stratified_split(const std::vector<ClassLabel>& labels,
                             const std::vector<double>& fractions, std::uint64_t seed) {
  if (fractions.empty()) throw ParameterError("at least one split fraction is required");
  for (double f : fractions) {
    if (!(f > 0.0)) throw ParameterError("split fractions must be positive");
  }
  if (std::fabs(std::accumulate(fractions.begin(), fractions.end(), 0.0) - 1.0) > 1e-9) {
    throw ParameterError("split fractions must sum to 1");
  }
  SplitResult result;
  result.subsets.resize(fractions.size());
  for (auto cls : kClassOrder) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    if (members.empty()) continue;
    if (members.size() < fractions.size()) {
      result.warnings.push_back(std::string(to_string(cls)) + " has " +
                                std::to_string(members.size()) + " rows for " +
                                std::to_string(fractions.size()) + " subsets");
    }
    SplitMix64 rng(derive_seed(seed, "split", class_index(cls)));
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng.below(i)]);
    }
    const auto n = static_cast<double>(members.size());
    std::vector<std::size_t> counts(fractions.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t k = 0; k < fractions.size(); ++k) {
      const double exact = n * fractions[k];
      counts[k] = static_cast<std::size_t>(std::floor(exact + 1e-9));
      assigned += counts[k];
      remainders.emplace_back(exact - static_cast<double>(counts[k]), k);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; assigned < members.size(); ++r, ++assigned) {
      ++counts[remainders[r % remainders.size()].second];
    }
    std::size_t pos = 0;
    for (std::size_t k = 0; k < fractions.size(); ++k) {
      for (std::size_t c = 0; c < counts[k]; ++c) result.subsets[k].push_back(members[pos++]);
    }
  }
  for (auto& s : result.subsets) std::sort(s.begin(), s.end());
  return result;
}

}  // namespace h3lab::features
