#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "h3lab/features/csv.hpp"

namespace h3lab::detect {

/// Dense row-major matrix of processed features with class labels.
struct FeatureMatrix {
  std::vector<std::string> columns;
  std::size_t rows = 0;
  std::vector<double> values;
  std::vector<features::ClassLabel> labels;

  std::size_t cols() const noexcept { return columns.size(); }
  std::span<const double> row(std::size_t r) const noexcept {
    return {values.data() + r * cols(), cols()};
  }
  double at(std::size_t r, std::size_t c) const noexcept { return values[r * cols() + c]; }

  void push_back(std::span<const double> row, features::ClassLabel label);

  static FeatureMatrix from_rows(const std::vector<std::string>& header,
                                 const std::vector<features::ProcessedRow>& rows);
  static FeatureMatrix from_table(const features::FeatureTable& table);

  /// Rows whose label satisfies `keep`.
  template <typename Pred>
  FeatureMatrix filter(Pred keep) const {
    FeatureMatrix out;
    out.columns = columns;
    for (std::size_t r = 0; r < rows; ++r) {
      if (keep(labels[r])) out.push_back(row(r), labels[r]);
    }
    return out;
  }
};

}  // namespace h3lab::detect
