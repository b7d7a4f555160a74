#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "costens/dataset.hpp"

namespace costens {

// 2x2 misclassification costs indexed (true class, predicted class) in the
// class order (dislike, favor). Diagonal is zero, entries are nonnegative and
// at least one off-diagonal entry is positive.
class CostMatrix {
 public:
  CostMatrix() : CostMatrix(1.0, 1.0) {}
  CostMatrix(double dislike_as_favor, double favor_as_dislike);
  static CostMatrix from_entries(const std::array<double, 4>& row_major);
  // "0,5,1,0" (row-major, true-dislike row first).
  static CostMatrix parse(const std::string& text);

  double at(Label truth, Label predicted) const { return c_[class_index(truth)][class_index(predicted)]; }
  // Cost of misclassifying a row whose true class is y.
  double miss_cost(Label y) const { return at(y, y == Label::Favor ? Label::Dislike : Label::Favor); }
  std::array<double, 4> entries() const { return {c_[0][0], c_[0][1], c_[1][0], c_[1][1]}; }
  // Compact tag such as "0-5-1-0", used in report file names.
  std::string tag() const;
  std::string to_string() const;

  bool operator==(const CostMatrix&) const = default;

 private:
  std::array<std::array<double, 2>, 2> c_{};
};

// Initial observation weights proportional to each row's misclassification
// cost, normalized to sum 1. Costs are first divided by the largest
// off-diagonal entry, so a positively rescaled matrix yields bit-identical weights.
std::vector<double> init_weights(const BinaryDataset& data, const CostMatrix& cost);

}  // namespace costens
