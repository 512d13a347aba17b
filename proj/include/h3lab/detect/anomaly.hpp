#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "h3lab/detect/matrix.hpp"

namespace h3lab::detect {

/// Reconstruction-error detector with the Normal-class centroid as the
/// reconstruction of every row.
struct AnomalyModel {
  std::vector<std::string> columns;
  std::vector<double> centroid;
  double threshold = 0.0;

  nlohmann::json to_json() const;
  static AnomalyModel from_json(const nlohmann::json& j);
};

/// Centroid of the Normal rows of `data`. Throws ParameterError when there
/// are none.
AnomalyModel anomaly_fit(const FeatureMatrix& data);

/// Mean absolute deviation of `row` from the centroid.
double anomaly_score(const AnomalyModel& model, std::span<const double> row);

inline bool is_anomalous(const AnomalyModel& model, std::span<const double> row) {
  return anomaly_score(model, row) > model.threshold;
}

/// Picks the threshold that maximizes F1 (Malicious = positive) on
/// `validation`, among midpoints between consecutive distinct scores, and
/// stores it in the model. Throws ParameterError unless both Normal and
/// malicious rows are present.
double calibrate_threshold(AnomalyModel& model, const FeatureMatrix& validation);

struct BinaryReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  nlohmann::json to_json() const;
};

/// Malicious (any non-Normal class) vs Normal at the model threshold.
BinaryReport evaluate_anomaly(const AnomalyModel& model, const FeatureMatrix& data);

}  // namespace h3lab::detect
