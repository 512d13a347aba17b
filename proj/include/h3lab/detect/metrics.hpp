#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "h3lab/detect/tree.hpp"

namespace h3lab::detect {

using ConfusionMatrix =
    std::array<std::array<std::uint64_t, features::kClassCount>, features::kClassCount>;

/// Percentages; confusion[truth][prediction] in the fixed class order.
struct MetricsReport {
  std::string model;
  std::optional<double> auc;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  ConfusionMatrix confusion{};
  double train_time_s = 0.0;

  nlohmann::json to_json() const;
};

/// Macro averages over the classes present in truths or predictions; a
/// class never predicted has precision 0. Throws ParameterError on empty or
/// unequal inputs.
MetricsReport evaluate(const std::vector<features::ClassLabel>& predictions,
                       const std::vector<features::ClassLabel>& truths);

/// One-vs-rest ROC AUC per class (rank statistic, ties averaged),
/// macro-averaged over classes that have both positives and negatives in
/// `truths`; others are skipped with a warning. nullopt if none qualify.
std::optional<double> auc_ovr(const std::vector<ClassScores>& scores,
                              const std::vector<features::ClassLabel>& truths,
                              std::vector<std::string>* warnings = nullptr);

/// Binary ROC AUC (percentage) of `scores` for `positive` truths.
double auc_binary(const std::vector<double>& scores, const std::vector<bool>& positive);

/// Table with the columns Model, AUC, Prec., Recall, F1, Acc, T.t.
std::string render_metrics_table(const std::vector<MetricsReport>& reports);

std::string render_confusion(const ConfusionMatrix& confusion);

}  // namespace h3lab::detect
