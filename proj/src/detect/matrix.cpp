#include "h3lab/detect/matrix.hpp"

#include "h3lab/common/error.hpp"

namespace h3lab::detect {

void FeatureMatrix::push_back(std::span<const double> r, features::ClassLabel label) {
  if (r.size() != cols()) throw SchemaError("row width does not match matrix columns");
  values.insert(values.end(), r.begin(), r.end());
  labels.push_back(label);
  ++rows;
}

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::string>& header,
                                       const std::vector<features::ProcessedRow>& rows) {
  FeatureMatrix m;
  m.columns.assign(header.begin(), header.end() - (header.empty() ? 0 : 1));
  m.values.reserve(rows.size() * m.cols());
  std::vector<double> buf;
  for (const auto& r : rows) {
    buf.assign(r.minmax.begin(), r.minmax.end());
    buf.insert(buf.end(), r.ohe.begin(), r.ohe.end());
    m.push_back(buf, r.label);
  }
  return m;
}

FeatureMatrix FeatureMatrix::from_table(const features::FeatureTable& table) {
  return from_rows(table.header, table.rows);
}

}  // namespace h3lab::detect
