#include "h3lab/detect/tree.hpp"

#include <algorithm>
#include <optional>
#include <queue>

#include "h3lab/common/error.hpp"

namespace h3lab::detect {

using features::ClassLabel;
using features::kClassCount;

void TreeParams::validate() const {
  if (max_depth == 0 || max_leaf_nodes == 0 || min_samples_leaf == 0 || min_samples_split == 0) {
    throw ParameterError("tree parameters must be positive");
  }
}

namespace {

using Counts = std::array<std::size_t, kClassCount>;

double sum_sq_over_n(const Counts& c, std::size_t n) {
  double s = 0.0;
  for (auto v : c) s += static_cast<double>(v) * static_cast<double>(v);
  return s / static_cast<double>(n);
}

struct Split {
  int feature = -1;
  std::uint32_t bin = 0;  // rows with bin <= this go left
  double threshold = 0.0;
  double gain = 0.0;
};

// Each column's sorted distinct values and every row's index into them.
struct BinnedColumns {
  std::vector<std::vector<double>> uniques;
  std::vector<std::vector<std::uint32_t>> bins;  // [col][row]
};

BinnedColumns bin_columns(const FeatureMatrix& m) {
  BinnedColumns b;
  b.uniques.resize(m.cols());
  b.bins.resize(m.cols());
  std::vector<double> col(m.rows);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows; ++r) col[r] = m.at(r, c);
    auto& u = b.uniques[c];
    u = col;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    auto& bins = b.bins[c];
    bins.resize(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) {
      bins[r] = static_cast<std::uint32_t>(std::lower_bound(u.begin(), u.end(), col[r]) - u.begin());
    }
  }
  return b;
}

class Grower {
 public:
  Grower(const FeatureMatrix& m, const TreeParams& p) : m_(m), p_(p), binned_(bin_columns(m)) {
    idx_.resize(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) idx_[i] = i;
    cls_.resize(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) cls_[i] = features::class_index(m.labels[i]);
  }

  Counts counts(std::size_t start, std::size_t end) const {
    Counts c{};
    for (std::size_t i = start; i < end; ++i) ++c[cls_[idx_[i]]];
    return c;
  }

  std::optional<Split> best_split(std::size_t start, std::size_t end, std::size_t depth) {
    const std::size_t n = end - start;
    if (n < p_.min_samples_split || depth >= p_.max_depth || n < 2 * p_.min_samples_leaf) {
      return std::nullopt;
    }
    const Counts total = counts(start, end);
    if (std::count_if(total.begin(), total.end(), [](std::size_t v) { return v > 0; }) < 2) {
      return std::nullopt;
    }
    const double parent = sum_sq_over_n(total, n);
    Split best;
    double best_score = parent + 1e-12;
    for (std::size_t f = 0; f < m_.cols(); ++f) {
      const auto& u = binned_.uniques[f];
      if (u.size() < 2) continue;
      const auto& bins = binned_.bins[f];
      // (bin, class counts) in ascending bin order
      scan_.clear();
      if (n * 16 < u.size()) {
        pairs_.clear();
        for (std::size_t i = start; i < end; ++i) pairs_.emplace_back(bins[idx_[i]], cls_[idx_[i]]);
        std::sort(pairs_.begin(), pairs_.end());
        for (const auto& [bin, cls] : pairs_) {
          if (scan_.empty() || scan_.back().first != bin) scan_.push_back({bin, Counts{}});
          ++scan_.back().second[cls];
        }
      } else {
        hist_.assign(u.size(), Counts{});
        seen_.assign(u.size(), 0);
        for (std::size_t i = start; i < end; ++i) {
          const auto bin = bins[idx_[i]];
          ++hist_[bin][cls_[idx_[i]]];
          seen_[bin] = 1;
        }
        for (std::uint32_t bin = 0; bin < u.size(); ++bin) {
          if (seen_[bin]) scan_.push_back({bin, hist_[bin]});
        }
      }
      Counts left{};
      std::size_t n_left = 0;
      for (std::size_t k = 0; k + 1 < scan_.size(); ++k) {
        for (std::size_t c = 0; c < kClassCount; ++c) {
          left[c] += scan_[k].second[c];
          n_left += scan_[k].second[c];
        }
        const std::size_t n_right = n - n_left;
        if (n_left < p_.min_samples_leaf) continue;
        if (n_right < p_.min_samples_leaf) break;
        Counts right{};
        for (std::size_t c = 0; c < kClassCount; ++c) right[c] = total[c] - left[c];
        const double score = sum_sq_over_n(left, n_left) + sum_sq_over_n(right, n_right);
        if (score > best_score) {
          best_score = score;
          best.feature = static_cast<int>(f);
          best.bin = scan_[k].first;
          const double lo = u[scan_[k].first];
          const double hi = u[scan_[k + 1].first];
          best.threshold = lo + (hi - lo) / 2.0;
          if (!(best.threshold < hi)) best.threshold = lo;
        }
      }
    }
    if (best.feature < 0) return std::nullopt;
    best.gain = best_score - parent;
    return best;
  }

  std::size_t partition(std::size_t start, std::size_t end, const Split& s) {
    const auto& bins = binned_.bins[static_cast<std::size_t>(s.feature)];
    auto mid = std::stable_partition(idx_.begin() + static_cast<std::ptrdiff_t>(start),
                                     idx_.begin() + static_cast<std::ptrdiff_t>(end),
                                     [&](std::size_t r) { return bins[r] <= s.bin; });
    return static_cast<std::size_t>(mid - idx_.begin());
  }

 private:
  const FeatureMatrix& m_;
  const TreeParams& p_;
  BinnedColumns binned_;
  std::vector<std::size_t> idx_;
  std::vector<std::size_t> cls_;
  std::vector<std::pair<std::uint32_t, std::size_t>> pairs_;
  std::vector<std::pair<std::uint32_t, Counts>> scan_;
  std::vector<Counts> hist_;
  std::vector<std::uint8_t> seen_;
};

ClassScores distribution(const Counts& c, std::size_t n) {
  ClassScores d{};
  for (std::size_t k = 0; k < kClassCount; ++k) {
    d[k] = n == 0 ? 0.0 : static_cast<double>(c[k]) / static_cast<double>(n);
  }
  return d;
}

struct Candidate {
  double gain;
  int node;
  std::size_t start, end;
  Split split;
};

struct CandidateOrder {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;
  }
};

}  // namespace

DecisionTree DecisionTree::train(const FeatureMatrix& data, const TreeParams& params,
                                 std::vector<std::string>* warnings) {
  params.validate();
  if (data.rows == 0) throw ParameterError("cannot train a tree on zero rows");
  DecisionTree tree;
  tree.params_ = params;
  tree.columns_ = data.columns;

  Grower g(data, params);
  const Counts root_counts = g.counts(0, data.rows);
  if (std::count_if(root_counts.begin(), root_counts.end(), [](std::size_t v) { return v > 0; }) <
          2 &&
      warnings != nullptr) {
    warnings->push_back("training data holds a single class; the tree is one leaf");
  }
  TreeNode root;
  root.samples = data.rows;
  root.distribution = distribution(root_counts, data.rows);
  tree.nodes_.push_back(root);

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> queue;
  auto consider = [&](int node, std::size_t start, std::size_t end) {
    if (auto s = g.best_split(start, end, tree.nodes_[static_cast<std::size_t>(node)].depth)) {
      queue.push({s->gain, node, start, end, *s});
    }
  };
  consider(0, 0, data.rows);
  std::size_t leaves = 1;
  while (!queue.empty() && leaves < params.max_leaf_nodes) {
    const Candidate c = queue.top();
    queue.pop();
    const std::size_t mid = g.partition(c.start, c.end, c.split);
    const std::size_t depth = tree.nodes_[static_cast<std::size_t>(c.node)].depth + 1;
    const int left = static_cast<int>(tree.nodes_.size());
    const int right = left + 1;
    for (auto [s, e] : {std::pair{c.start, mid}, std::pair{mid, c.end}}) {
      TreeNode child;
      child.depth = depth;
      child.samples = e - s;
      child.distribution = distribution(g.counts(s, e), e - s);
      tree.nodes_.push_back(child);
    }
    auto& parent = tree.nodes_[static_cast<std::size_t>(c.node)];
    parent.feature = c.split.feature;
    parent.threshold = c.split.threshold;
    parent.left = left;
    parent.right = right;
    ++leaves;
    consider(left, c.start, mid);
    consider(right, mid, c.end);
  }
  return tree;
}

const TreeNode& DecisionTree::leaf_for(std::span<const double> row) const {
  std::size_t i = 0;
  while (nodes_[i].feature >= 0) {
    const auto& n = nodes_[i];
    i = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                         : n.right);
  }
  return nodes_[i];
}

ClassScores DecisionTree::predict_scores(std::span<const double> row) const {
  if (row.size() != columns_.size()) throw SchemaError("row width differs from the tree's");
  return leaf_for(row).distribution;
}

features::ClassLabel DecisionTree::predict(std::span<const double> row) const {
  const auto s = predict_scores(row);
  return features::kClassOrder[static_cast<std::size_t>(
      std::max_element(s.begin(), s.end()) - s.begin())];
}

Predictions DecisionTree::predict(const FeatureMatrix& data) const {
  if (data.columns != columns_) throw SchemaError("feature columns differ from training");
  Predictions p;
  p.labels.reserve(data.rows);
  p.scores.reserve(data.rows);
  for (std::size_t r = 0; r < data.rows; ++r) {
    const auto s = leaf_for(data.row(r)).distribution;
    p.scores.push_back(s);
    p.labels.push_back(features::kClassOrder[static_cast<std::size_t>(
        std::max_element(s.begin(), s.end()) - s.begin())]);
  }
  return p;
}

std::size_t DecisionTree::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

std::size_t DecisionTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

nlohmann::json DecisionTree::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : nodes_) {
    nodes.push_back({{"feature", n.feature},
                     {"threshold", n.threshold},
                     {"left", n.left},
                     {"right", n.right},
                     {"depth", n.depth},
                     {"samples", n.samples},
                     {"distribution", n.distribution}});
  }
  std::vector<std::string> classes;
  for (auto c : features::kClassOrder) classes.emplace_back(features::to_string(c));
  return {{"model", "decision_tree"},
          {"params",
           {{"max_depth", params_.max_depth},
            {"max_leaf_nodes", params_.max_leaf_nodes},
            {"min_samples_leaf", params_.min_samples_leaf},
            {"min_samples_split", params_.min_samples_split}}},
          {"classes", classes},
          {"columns", columns_},
          {"nodes", std::move(nodes)}};
}

DecisionTree DecisionTree::from_json(const nlohmann::json& j) {
  try {
    DecisionTree t;
    const auto& p = j.at("params");
    t.params_.max_depth = p.at("max_depth").get<std::size_t>();
    t.params_.max_leaf_nodes = p.at("max_leaf_nodes").get<std::size_t>();
    t.params_.min_samples_leaf = p.at("min_samples_leaf").get<std::size_t>();
    t.params_.min_samples_split = p.at("min_samples_split").get<std::size_t>();
    t.columns_ = j.at("columns").get<std::vector<std::string>>();
    for (const auto& n : j.at("nodes")) {
      TreeNode node;
      node.feature = n.at("feature").get<int>();
      node.threshold = n.at("threshold").get<double>();
      node.left = n.at("left").get<int>();
      node.right = n.at("right").get<int>();
      node.depth = n.at("depth").get<std::size_t>();
      node.samples = n.at("samples").get<std::size_t>();
      node.distribution = n.at("distribution").get<ClassScores>();
      t.nodes_.push_back(node);
    }
    const auto count = static_cast<int>(t.nodes_.size());
    for (const auto& n : t.nodes_) {
      if (n.feature >= static_cast<int>(t.columns_.size()) ||
          (n.feature >= 0 && (n.left <= 0 || n.right <= 0 || n.left >= count || n.right >= count))) {
        throw SchemaError("tree model has dangling node references");
      }
    }
    if (t.nodes_.empty()) throw SchemaError("tree model has no nodes");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad tree model: ") + e.what());
  }
}

}  // namespace h3lab::detect
