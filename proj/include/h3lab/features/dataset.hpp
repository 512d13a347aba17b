#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "h3lab/features/csv.hpp"
#include "h3lab/features/split.hpp"

namespace h3lab::features {

struct DatasetOptions {
  std::vector<double> fractions{0.6, 0.4};
  std::uint64_t seed = 0;
};

struct Dataset {
  Preprocessor preprocessor;  // fitted on splits[0] only
  std::vector<std::vector<ProcessedRow>> splits;
  std::vector<std::string> warnings;

  std::vector<std::string> header() const { return preprocessor.header(); }
};

/// Stratified split of the raw rows, then preprocessing fitted on the first
/// (training) subset and applied to every subset.
Dataset build_dataset(const std::vector<RawRow>& rows, const FeatureSchema& schema,
                      const DatasetOptions& options);

/// Writes <stem>_<i>.csv per split (train/test names for two splits,
/// train/val/test for three) plus preprocessor.json. Returns the CSV paths.
std::vector<std::filesystem::path> write_dataset(const Dataset& dataset,
                                                 const std::filesystem::path& dir);

}  // namespace h3lab::features
