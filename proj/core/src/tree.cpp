#include "costens/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "costens/error.hpp"

namespace costens {

void TreeParams::validate() const {
  if (max_depth < 1) throw Error(ErrorCode::InvalidArgument, "max_depth must be >= 1");
  if (!(min_leaf_weight > 0.0)) throw Error(ErrorCode::InvalidArgument, "min_leaf_weight must be > 0");
  if (!(min_split_improvement >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "min_split_improvement must be >= 0");
  }
}

Tree::Tree(TreeKind kind, std::size_t n_features, std::vector<TreeNode> nodes)
    : kind_(kind), n_features_(n_features), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorCode::InvalidArgument, "tree has no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& node = nodes_[i];
    if (node.is_leaf()) continue;
    // Children are stored after their parent, which rules out cycles.
    if (static_cast<std::size_t>(node.feature) >= n_features_ || node.left <= i || node.right <= i ||
        node.left >= nodes_.size() || node.right >= nodes_.size()) {
      throw Error(ErrorCode::InvalidArgument, "malformed tree node " + std::to_string(i));
    }
  }
}

std::size_t Tree::depth() const {
  std::vector<std::size_t> node_depth(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, node_depth[i]);
    if (!nodes_[i].is_leaf()) {
      node_depth[nodes_[i].left] = node_depth[i] + 1;
      node_depth[nodes_[i].right] = node_depth[i] + 1;
    }
  }
  return deepest;
}

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

double Tree::predict(std::span<const double> row) const {
  if (row.size() != n_features_) {
    throw Error(ErrorCode::DimensionMismatch,
                "row has " + std::to_string(row.size()) + " features, tree expects " + std::to_string(n_features_));
  }
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const auto& node = nodes_[i];
    i = row[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left : node.right;
  }
  return nodes_[i].value;
}

double predict_tree(const Tree& tree, std::span<const double> row) { return tree.predict(row); }

namespace {

// Sufficient statistics of a set of rows. For classification the target is
// the +/-1 label; both criteria only need (W, S, Q) or the class masses.
struct Stats {
  double w = 0.0;    // total weight
  double s = 0.0;    // sum w*t
  double q = 0.0;    // sum w*t^2
  double neg = 0.0;  // weight with t < 0
  double pos = 0.0;  // weight with t > 0

  void add(double wi, double ti) {
    w += wi;
    s += wi * ti;
    q += wi * ti * ti;
    (ti > 0.0 ? pos : neg) += wi;
  }
};

class Builder {
 public:
  Builder(const BinaryDataset& data, std::span<const double> targets, std::span<const double> weights,
          const TreeParams& params, TreeKind kind)
      : data_(data), targets_(targets), weights_(weights), params_(params), kind_(kind) {}

  Tree build() {
    std::vector<std::uint32_t> active;
    for (std::size_t i = 0; i < data_.n(); ++i) {
      if (weights_[i] > 0.0) active.push_back(static_cast<std::uint32_t>(i));
    }
    Stats root;
    for (auto i : active) root.add(weights_[i], targets_[i]);
    root_weight_ = root.w;

    std::vector<std::vector<std::uint32_t>> sorted(data_.d(), active);
    for (std::size_t j = 0; j < data_.d(); ++j) {
      std::stable_sort(sorted[j].begin(), sorted[j].end(),
                       [&](std::uint32_t a, std::uint32_t b) { return data_.at(a, j) < data_.at(b, j); });
    }
    grow(std::move(sorted), root, 0);
    return Tree(kind_, data_.d(), std::move(nodes_));
  }

 private:
  // Weighted impurity mass W * impurity(node): Gini for classification,
  // sum of squared errors for regression.
  double impurity_mass(const Stats& st) const {
    if (st.w <= 0.0) return 0.0;
    if (kind_ == TreeKind::Classification) return 2.0 * st.neg * st.pos / st.w;
    return std::max(0.0, st.q - st.s * st.s / st.w);
  }

  double leaf_value(const Stats& st) const {
    if (kind_ == TreeKind::Classification) return st.pos > st.neg ? 1.0 : -1.0;
    return std::clamp(st.s / st.w, -1.0, 1.0);
  }

  bool is_pure(const std::vector<std::uint32_t>& rows, const Stats& st) const {
    if (kind_ == TreeKind::Classification) return st.neg == 0.0 || st.pos == 0.0;
    for (auto i : rows) {
      if (targets_[i] != targets_[rows.front()]) return false;
    }
    return true;
  }

  std::uint32_t grow(std::vector<std::vector<std::uint32_t>> sorted, const Stats& node, std::size_t depth) {
    const auto index = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(TreeNode{-1, 0.0, 0, 0, leaf_value(node)});
    if (depth >= params_.max_depth || is_pure(sorted.front(), node)) return index;

    const double parent = impurity_mass(node);
    const double min_leaf = params_.min_leaf_weight * root_weight_;
    double best_gain = -std::numeric_limits<double>::infinity();
    std::int32_t best_feature = -1;
    double best_threshold = 0.0;

    for (std::size_t j = 0; j < data_.d(); ++j) {
      const auto& rows = sorted[j];
      Stats left;
      for (std::size_t p = 0; p + 1 < rows.size(); ++p) {
        left.add(weights_[rows[p]], targets_[rows[p]]);
        const double x = data_.at(rows[p], j);
        const double x_next = data_.at(rows[p + 1], j);
        if (!(x < x_next)) continue;
        Stats right{node.w - left.w, node.s - left.s, node.q - left.q, node.neg - left.neg, node.pos - left.pos};
        if (left.w < min_leaf || right.w < min_leaf) continue;
        const double gain = (parent - impurity_mass(left) - impurity_mass(right)) / root_weight_;
        if (gain > best_gain + kSplitTolerance) {
          best_gain = gain;
          best_feature = static_cast<std::int32_t>(j);
          best_threshold = x + (x_next - x) / 2.0;
        }
      }
    }
    if (best_feature < 0 || !(best_gain > params_.min_split_improvement + kSplitTolerance)) return index;

    const auto f = static_cast<std::size_t>(best_feature);
    std::vector<std::vector<std::uint32_t>> left_sorted(data_.d()), right_sorted(data_.d());
    for (std::size_t j = 0; j < data_.d(); ++j) {
      for (auto i : sorted[j]) {
        (data_.at(i, f) < best_threshold ? left_sorted[j] : right_sorted[j]).push_back(i);
      }
    }
    sorted.clear();
    Stats left_stats, right_stats;
    for (auto i : left_sorted.front()) left_stats.add(weights_[i], targets_[i]);
    for (auto i : right_sorted.front()) right_stats.add(weights_[i], targets_[i]);

    const auto l = grow(std::move(left_sorted), left_stats, depth + 1);
    const auto r = grow(std::move(right_sorted), right_stats, depth + 1);
    nodes_[index] = TreeNode{best_feature, best_threshold, l, r, 0.0};
    return index;
  }

  const BinaryDataset& data_;
  std::span<const double> targets_;
  std::span<const double> weights_;
  const TreeParams& params_;
  TreeKind kind_;
  double root_weight_ = 0.0;
  std::vector<TreeNode> nodes_;
};

void check_weights(const BinaryDataset& data, std::span<const double> weights) {
  if (weights.size() != data.n()) throw Error(ErrorCode::LengthMismatch, "weights length differs from n");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::InvalidArgument, "weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::AllWeightsZero, "weights sum to zero");
}

}  // namespace

Tree fit_classification_tree(const BinaryDataset& data, std::span<const double> weights,
                             const TreeParams& params) {
  params.validate();
  check_weights(data, weights);
  std::vector<double> targets(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) targets[i] = sign_of(data.label(i));
  return Builder(data, targets, weights, params, TreeKind::Classification).build();
}

Tree fit_regression_tree(const BinaryDataset& data, std::span<const double> targets,
                         std::span<const double> weights, const TreeParams& params) {
  params.validate();
  check_weights(data, weights);
  if (targets.size() != data.n()) throw Error(ErrorCode::LengthMismatch, "targets length differs from n");
  for (double t : targets) {
    if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "non-finite regression target");
  }
  return Builder(data, targets, weights, params, TreeKind::Regression).build();
}

}  // namespace costens
