#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "costens/dataset.hpp"

namespace costens {

// Candidate splits whose impurity decrease differs by less than this are ties.
inline constexpr double kSplitTolerance = 1e-12;

struct TreeParams {
  std::size_t max_depth = 30;
  // Minimum leaf weight as a fraction of the total training weight. Relative so
  // that rescaling all weights, or duplicating a row instead of doubling its
  // weight, grows the same tree.
  double min_leaf_weight = 1e-9;
  // Minimum impurity decrease, normalized by the total training weight.
  double min_split_improvement = 0.0;

  static TreeParams bagging_defaults() { return {30, 1e-9, 0.0}; }
  static TreeParams weak_learner_defaults() { return {3, 1e-9, 0.0}; }

  void validate() const;
  bool operator==(const TreeParams&) const = default;
};

enum class TreeKind : std::uint8_t { Classification, Regression };

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // rows with value < threshold go left
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  double value = 0.0;  // leaf output

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

class Tree {
 public:
  Tree() = default;
  Tree(TreeKind kind, std::size_t n_features, std::vector<TreeNode> nodes);

  TreeKind kind() const { return kind_; }
  std::size_t n_features() const { return n_features_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t depth() const;
  std::size_t leaf_count() const;

  double predict(std::span<const double> row) const;

  bool operator==(const Tree&) const = default;

 private:
  TreeKind kind_ = TreeKind::Classification;
  std::size_t n_features_ = 0;
  std::vector<TreeNode> nodes_;
};

// Weighted-Gini CART tree; leaves carry the weighted-majority label as +/-1.
// Rows with zero weight take no part in fitting.
Tree fit_classification_tree(const BinaryDataset& data, std::span<const double> weights,
                             const TreeParams& params);

// Weighted least-squares tree; leaves carry the weighted target mean clamped to [-1, 1].
Tree fit_regression_tree(const BinaryDataset& data, std::span<const double> targets,
                         std::span<const double> weights, const TreeParams& params);

double predict_tree(const Tree& tree, std::span<const double> row);

}  // namespace costens
