#include "h3lab/detect/anomaly.hpp"

#include <algorithm>
#include <cmath>

#include "h3lab/common/error.hpp"

namespace h3lab::detect {

using features::ClassLabel;

nlohmann::json AnomalyModel::to_json() const {
  return {{"model", "centroid_mae"}, {"columns", columns}, {"centroid", centroid},
          {"threshold", threshold}};
}

AnomalyModel AnomalyModel::from_json(const nlohmann::json& j) {
  try {
    AnomalyModel m;
    m.columns = j.at("columns").get<std::vector<std::string>>();
    m.centroid = j.at("centroid").get<std::vector<double>>();
    m.threshold = j.at("threshold").get<double>();
    if (m.columns.size() != m.centroid.size()) throw SchemaError("centroid width mismatch");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad anomaly model: ") + e.what());
  }
}

AnomalyModel anomaly_fit(const FeatureMatrix& data) {
  AnomalyModel m;
  m.columns = data.columns;
  m.centroid.assign(data.cols(), 0.0);
  std::size_t n = 0;
  for (std::size_t r = 0; r < data.rows; ++r) {
    if (data.labels[r] != ClassLabel::Normal) continue;
    const auto row = data.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) m.centroid[c] += row[c];
    ++n;
  }
  if (n == 0) throw ParameterError("anomaly model needs at least one Normal row");
  for (auto& v : m.centroid) v /= static_cast<double>(n);
  return m;
}

double anomaly_score(const AnomalyModel& model, std::span<const double> row) {
  if (row.size() != model.centroid.size()) throw SchemaError("row width differs from the model's");
  if (row.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < row.size(); ++c) sum += std::fabs(row[c] - model.centroid[c]);
  return sum / static_cast<double>(row.size());
}

double calibrate_threshold(AnomalyModel& model, const FeatureMatrix& validation) {
  if (validation.columns != model.columns) throw SchemaError("validation columns differ");
  std::vector<std::pair<double, bool>> scored;  // (score, malicious)
  std::size_t positives = 0;
  for (std::size_t r = 0; r < validation.rows; ++r) {
    const bool malicious = validation.labels[r] != ClassLabel::Normal;
    positives += malicious ? 1 : 0;
    scored.emplace_back(anomaly_score(model, validation.row(r)), malicious);
  }
  if (positives == 0 || positives == scored.size()) {
    throw ParameterError("calibration needs both Normal and malicious rows");
  }
  std::sort(scored.begin(), scored.end());
  // Sweep thresholds upward: everything above the cut is flagged.
  std::size_t tp = positives, fp = scored.size() - positives;
  auto f1 = [&] {
    const double p = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double r = static_cast<double>(tp) / static_cast<double>(positives);
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  };
  double best_f1 = f1();
  double best = scored.front().first / 2.0;
  for (std::size_t i = 0; i < scored.size();) {
    std::size_t j = i;
    while (j < scored.size() && scored[j].first == scored[i].first) {
      if (scored[j].second) {
        --tp;
      } else {
        --fp;
      }
      ++j;
    }
    if (j == scored.size()) break;
    const double cut = scored[i].first + (scored[j].first - scored[i].first) / 2.0;
    const double f = f1();
    if (f > best_f1) {
      best_f1 = f;
      best = cut;
    }
    i = j;
  }
  if (!(best > 0.0)) best = std::max(scored.front().first, 1e-12);
  model.threshold = best;
  return best;
}

nlohmann::json BinaryReport::to_json() const {
  return {{"precision", precision}, {"recall", recall}, {"f1", f1}, {"accuracy", accuracy},
          {"tp", tp}, {"fp", fp}, {"tn", tn}, {"fn", fn}};
}

BinaryReport evaluate_anomaly(const AnomalyModel& model, const FeatureMatrix& data) {
  BinaryReport b;
  for (std::size_t r = 0; r < data.rows; ++r) {
    const bool flagged = is_anomalous(model, data.row(r));
    const bool malicious = data.labels[r] != ClassLabel::Normal;
    if (flagged && malicious) ++b.tp;
    if (flagged && !malicious) ++b.fp;
    if (!flagged && !malicious) ++b.tn;
    if (!flagged && malicious) ++b.fn;
  }
  b.precision = b.tp + b.fp == 0 ? 0.0 : static_cast<double>(b.tp) / static_cast<double>(b.tp + b.fp);
  b.recall = b.tp + b.fn == 0 ? 0.0 : static_cast<double>(b.tp) / static_cast<double>(b.tp + b.fn);
  b.f1 = b.precision + b.recall == 0.0 ? 0.0
                                       : 2.0 * b.precision * b.recall / (b.precision + b.recall);
  b.accuracy = data.rows == 0 ? 0.0
                              : static_cast<double>(b.tp + b.tn) / static_cast<double>(data.rows);
  return b;
}

}  // namespace h3lab::detect
