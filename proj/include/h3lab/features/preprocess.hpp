#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "h3lab/features/extract.hpp"

namespace h3lab::features {

/// Per minmax feature training range, in schema order.
struct MinMaxScaler {
  std::vector<double> min;
  std::vector<double> max;
};

/// Absent values count as 0; lists are summed first.
MinMaxScaler minmax_fit(const std::vector<RawRow>& rows, const FeatureSchema& schema);

/// (x - min) / (max - min) rounded half-up to 3 decimals; 0 for a constant
/// column. Values outside the training range are not clamped.
std::vector<double> minmax_apply(const MinMaxScaler& scaler, const RawRow& row,
                                 const FeatureSchema& schema);

/// Observed categories per ohe feature, sorted.
struct OneHotEncoder {
  std::vector<std::vector<std::string>> categories;
};

OneHotEncoder ohe_fit(const std::vector<RawRow>& rows, const FeatureSchema& schema);

/// Indicators per feature: one-hot for a known category, all 0 for an
/// unseen one, all -1 when absent.
std::vector<int> ohe_apply(const OneHotEncoder& encoder, const RawRow& row,
                           const FeatureSchema& schema);

struct ProcessedRow {
  std::vector<double> minmax;
  std::vector<int> ohe;
  ClassLabel label = ClassLabel::Normal;

  friend bool operator==(const ProcessedRow&, const ProcessedRow&) = default;
};

/// Scaler and encoder fitted together on training rows.
class Preprocessor {
 public:
  Preprocessor() = default;

  static Preprocessor fit(const std::vector<RawRow>& training,
                          const FeatureSchema& schema = FeatureSchema::canonical());

  ProcessedRow apply(const RawRow& row) const;
  std::vector<ProcessedRow> apply(const std::vector<RawRow>& rows) const;

  /// Minmax names, `<feature>=<category>` columns, then Label.
  std::vector<std::string> header() const;

  const FeatureSchema& schema() const noexcept { return schema_; }
  const MinMaxScaler& scaler() const noexcept { return scaler_; }
  const OneHotEncoder& encoder() const noexcept { return encoder_; }

  nlohmann::json to_json() const;
  static Preprocessor from_json(const nlohmann::json& j);

 private:
  FeatureSchema schema_;
  MinMaxScaler scaler_;
  OneHotEncoder encoder_;
};

}  // namespace h3lab::features
