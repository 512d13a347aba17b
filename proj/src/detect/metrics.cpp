#include "h3lab/detect/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "h3lab/common/error.hpp"
#include "h3lab/common/text.hpp"

namespace h3lab::detect {

using features::ClassLabel;
using features::kClassCount;

nlohmann::json MetricsReport::to_json() const {
  nlohmann::json j{{"model", model},
                   {"precision", precision},
                   {"recall", recall},
                   {"f1", f1},
                   {"accuracy", accuracy},
                   {"train_time_s", train_time_s},
                   {"confusion", confusion}};
  j["auc"] = auc ? nlohmann::json(*auc) : nlohmann::json(nullptr);
  std::vector<std::string> classes;
  for (auto c : features::kClassOrder) classes.emplace_back(features::to_string(c));
  j["classes"] = classes;
  return j;
}

MetricsReport evaluate(const std::vector<ClassLabel>& predictions,
                       const std::vector<ClassLabel>& truths) {
  if (predictions.empty()) throw ParameterError("cannot evaluate zero predictions");
  if (predictions.size() != truths.size()) {
    throw ParameterError("predictions and truths differ in length");
  }
  MetricsReport r;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    ++r.confusion[features::class_index(truths[i])][features::class_index(predictions[i])];
  }
  std::uint64_t correct = 0;
  double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0;
  std::size_t present = 0;
  for (std::size_t c = 0; c < kClassCount; ++c) {
    correct += r.confusion[c][c];
    std::uint64_t truth_n = 0, pred_n = 0;
    for (std::size_t k = 0; k < kClassCount; ++k) {
      truth_n += r.confusion[c][k];
      pred_n += r.confusion[k][c];
    }
    if (truth_n == 0 && pred_n == 0) continue;
    ++present;
    const double tp = static_cast<double>(r.confusion[c][c]);
    const double precision = pred_n == 0 ? 0.0 : tp / static_cast<double>(pred_n);
    const double recall = truth_n == 0 ? 0.0 : tp / static_cast<double>(truth_n);
    const double f1 =
        precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
    p_sum += precision;
    r_sum += recall;
    f_sum += f1;
  }
  const auto k = static_cast<double>(present);
  r.precision = 100.0 * p_sum / k;
  r.recall = 100.0 * r_sum / k;
  r.f1 = 100.0 * f_sum / k;
  r.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(truths.size());
  return r;
}

double auc_binary(const std::vector<double>& scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size()) throw ParameterError("scores and truths differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });
  double pos_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (positive[order[k]]) {
        pos_rank_sum += mid_rank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw ParameterError("AUC needs both positives and negatives");
  const double u = pos_rank_sum - static_cast<double>(n_pos) * static_cast<double>(n_pos + 1) / 2.0;
  return 100.0 * u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::optional<double> auc_ovr(const std::vector<ClassScores>& scores,
                              const std::vector<ClassLabel>& truths,
                              std::vector<std::string>* warnings) {
  if (scores.size() != truths.size()) throw ParameterError("scores and truths differ in length");
  double sum = 0.0;
  std::size_t used = 0;
  for (auto cls : features::kClassOrder) {
    const std::size_t c = features::class_index(cls);
    std::vector<double> s(scores.size());
    std::vector<bool> pos(scores.size());
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      s[i] = scores[i][c];
      pos[i] = truths[i] == cls;
      n_pos += pos[i] ? 1 : 0;
    }
    if (n_pos == 0 || n_pos == scores.size()) {
      if (warnings != nullptr) {
        warnings->push_back(std::string(features::to_string(cls)) +
                            (n_pos == 0 ? " absent from truths" : " is the only class") +
                            "; excluded from AUC");
      }
      continue;
    }
    sum += auc_binary(s, pos);
    ++used;
  }
  if (used == 0) return std::nullopt;
  return sum / static_cast<double>(used);
}

std::string render_metrics_table(const std::vector<MetricsReport>& reports) {
  std::ostringstream out;
  out << "| Model | AUC | Prec. | Recall | F1 | Acc | T.t. |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    out << "| " << r.model << " | " << (r.auc ? format_fixed(*r.auc, 2) : "n/a") << " | "
        << format_fixed(r.precision, 2) << " | " << format_fixed(r.recall, 2) << " | "
        << format_fixed(r.f1, 2) << " | " << format_fixed(r.accuracy, 2) << " | "
        << format_fixed(r.train_time_s, 2) << "s |\n";
  }
  return out.str();
}

std::string render_confusion(const ConfusionMatrix& confusion) {
  std::ostringstream out;
  out << "truth \\ predicted";
  for (auto c : features::kClassOrder) out << " | " << features::to_string(c);
  out << '\n';
  for (auto t : features::kClassOrder) {
    out << features::to_string(t);
    for (auto p : features::kClassOrder) {
      out << " | " << confusion[features::class_index(t)][features::class_index(p)];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace h3lab::detect
