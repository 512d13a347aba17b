#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "h3lab/detect/matrix.hpp"

namespace h3lab::detect {

struct TreeParams {
  std::size_t max_depth = 200;
  std::size_t max_leaf_nodes = 1000;
  std::size_t min_samples_leaf = 2;
  std::size_t min_samples_split = 10;

  /// Throws ParameterError unless all are positive (max_leaf_nodes >= 2 is
  /// not required; 1 yields a single leaf).
  void validate() const;
};

using ClassScores = std::array<double, features::kClassCount>;

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::size_t depth = 0;
  std::size_t samples = 0;
  ClassScores distribution{};  // class frequencies in the node, sum 1
};

struct Predictions {
  std::vector<features::ClassLabel> labels;
  std::vector<ClassScores> scores;
};

/// CART classifier: Gini impurity, binary splits `x <= threshold` at
/// midpoints between observed values, grown best-first (largest impurity
/// decrease next) until no split is allowed or max_leaf_nodes is reached.
class DecisionTree {
 public:
  static DecisionTree train(const FeatureMatrix& data, const TreeParams& params = {},
                            std::vector<std::string>* warnings = nullptr);

  ClassScores predict_scores(std::span<const double> row) const;
  features::ClassLabel predict(std::span<const double> row) const;
  /// Throws SchemaError when the columns differ from the training columns.
  Predictions predict(const FeatureMatrix& data) const;

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const TreeParams& params() const noexcept { return params_; }
  std::size_t depth() const noexcept;
  std::size_t leaf_count() const noexcept;

  nlohmann::json to_json() const;
  static DecisionTree from_json(const nlohmann::json& j);

 private:
  const TreeNode& leaf_for(std::span<const double> row) const;

  TreeParams params_;
  std::vector<std::string> columns_;
  std::vector<TreeNode> nodes_;
};

}  // namespace h3lab::detect
