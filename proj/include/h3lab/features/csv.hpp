#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "h3lab/features/preprocess.hpp"

namespace h3lab::features {

struct FeatureTable {
  std::vector<std::string> header;  // ends with Label
  std::size_t minmax_count = 0;
  std::vector<ProcessedRow> rows;

  std::size_t width() const noexcept { return header.empty() ? 0 : header.size() - 1; }
};

/// Header line, then one line per row: minmax values in shortest
/// round-trip form, indicators as -1/0/1, class name last.
void write_feature_csv(std::ostream& out, const std::vector<std::string>& header,
                       const std::vector<ProcessedRow>& rows);
void write_feature_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                       const std::vector<ProcessedRow>& rows);

/// Throws SchemaError unless the header is the schema's minmax names in
/// order, then `<ohe feature>=<category>` columns grouped in schema order,
/// then Label.
FeatureTable read_feature_csv(std::istream& in,
                              const FeatureSchema& schema = FeatureSchema::canonical());
FeatureTable read_feature_csv(const std::filesystem::path& path,
                              const FeatureSchema& schema = FeatureSchema::canonical());

}  // namespace h3lab::features
