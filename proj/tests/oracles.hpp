#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// Nothing here calls into the library's learners.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "costens/dataset.hpp"

namespace oracle {

using costens::BinaryDataset;
using costens::Label;

inline BinaryDataset make_dataset(const std::vector<std::vector<double>>& rows, const std::vector<int>& signs) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < (rows.empty() ? 0 : rows.front().size()); ++j) names.push_back("x" + std::to_string(j));
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  std::vector<Label> labels;
  for (int s : signs) labels.push_back(s > 0 ? Label::Favor : Label::Dislike);
  return BinaryDataset(names, flat, labels, "y");
}

// x = 1..6, y = (-,-,+,-,+,+). Hand-traced two rounds of AdaBoost.M1 with stumps.
inline BinaryDataset six_row_fixture() {
  return make_dataset({{1}, {2}, {3}, {4}, {5}, {6}}, {-1, -1, 1, -1, 1, 1});
}

struct SixRowTrace {
  std::array<double, 6> w0{1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6};
  double eps1 = 1.0 / 6;
  double alpha1 = 0.5 * std::log(5.0);
  double threshold1 = 2.5;
  std::array<double, 6> w1{0.1, 0.1, 0.1, 0.5, 0.1, 0.1};
  double eps2 = 0.1;
  double alpha2 = std::log(3.0);
  double threshold2 = 4.5;
  std::array<double, 6> w2{1.0 / 18, 1.0 / 18, 0.5, 5.0 / 18, 1.0 / 18, 1.0 / 18};
};

struct RootSplit {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

// Exhaustive search over every (feature, midpoint) pair, scoring each by
// direct summation of weighted Gini over the rows on each side. Rows with zero
// weight are invisible. Returns nullopt when the root stays a leaf.
inline std::optional<RootSplit> brute_root_split(const BinaryDataset& data, const std::vector<double>& w,
                                                 double min_leaf_fraction, double min_improvement = 0.0,
                                                 double tolerance = 1e-12) {
  const std::size_t n = data.n();
  double total = 0.0;
  for (double v : w) total += v;
  auto gini_mass = [&](const std::function<bool(std::size_t)>& in) {
    double wp = 0.0, wn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] > 0.0 && in(i)) (data.label(i) == Label::Favor ? wp : wn) += w[i];
    }
    const double m = wp + wn;
    if (m <= 0.0) return std::pair{0.0, 0.0};
    const double p = wp / m;
    return std::pair{m * (1.0 - p * p - (1.0 - p) * (1.0 - p)), m};
  };
  const auto [parent, parent_w] = gini_mass([](std::size_t) { return true; });
  (void)parent_w;
  if (parent == 0.0) return std::nullopt;

  std::optional<RootSplit> best;
  double best_gain = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < data.d(); ++j) {
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] > 0.0) values.push_back(data.at(i, j));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      const double thr = (values[k] + values[k + 1]) / 2.0;
      const auto [lm, lw] = gini_mass([&](std::size_t i) { return data.at(i, j) < thr; });
      const auto [rm, rw] = gini_mass([&](std::size_t i) { return !(data.at(i, j) < thr); });
      if (lw < min_leaf_fraction * total || rw < min_leaf_fraction * total) continue;
      const double gain = (parent - lm - rm) / total;
      if (gain > best_gain + tolerance) {
        best_gain = gain;
        best = RootSplit{static_cast<int>(j), thr, gain};
      }
    }
  }
  if (!best || !(best->gain > min_improvement + tolerance)) return std::nullopt;
  return best;
}

// Weighted error of +/-1 (or real-valued, sign taken) outputs; zero counts as dislike.
inline double weighted_error(const std::vector<double>& w, const std::vector<double>& outputs,
                             const BinaryDataset& data) {
  double wrong = 0.0, total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Label predicted = outputs[i] > 0.0 ? Label::Favor : Label::Dislike;
    total += w[i];
    if (predicted != data.label(i)) wrong += w[i];
  }
  return wrong / total;
}

// Population standardization, constant columns mapped to zero.
inline std::vector<std::vector<double>> standardize(const BinaryDataset& data) {
  const std::size_t n = data.n(), d = data.d();
  std::vector<std::vector<double>> z(n, std::vector<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += data.at(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) var += (data.at(i, j) - mean) * (data.at(i, j) - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) z[i][j] = sd > 0.0 ? (data.at(i, j) - mean) / sd : 0.0;
  }
  return z;
}

// Soft-margin primal 0.5|w|^2 + sum_i C_i max(0, 1 - y_i (w.x_i + b)) for two
// features, minimized by nested ternary search. Partial minimization keeps a
// convex function convex, so each level is a one-dimensional convex search.
inline double svm_primal_optimum(const std::vector<std::vector<double>>& z, const std::vector<int>& y,
                                 const std::vector<double>& c) {
  const std::size_t n = z.size();
  double sum_c = 0.0, max_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_c += c[i];
    max_norm = std::max(max_norm, std::hypot(z[i][0], z[i][1]));
  }
  const double w_bound = std::sqrt(2.0 * sum_c) + 1e-9;
  const double b_bound = 1.0 + w_bound * max_norm;
  auto primal = [&](double w0, double w1, double b) {
    double v = 0.5 * (w0 * w0 + w1 * w1);
    for (std::size_t i = 0; i < n; ++i) v += c[i] * std::max(0.0, 1.0 - y[i] * (w0 * z[i][0] + w1 * z[i][1] + b));
    return v;
  };
  auto ternary = [](double lo, double hi, const std::function<double(double)>& f) {
    for (int it = 0; it < 70; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (f(m1) < f(m2)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    return f((lo + hi) / 2.0);
  };
  return ternary(-w_bound, w_bound, [&](double w0) {
    return ternary(-w_bound, w_bound, [&](double w1) {
      return ternary(-b_bound, b_bound, [&](double b) { return primal(w0, w1, b); });
    });
  });
}

// Row-major (true dislike row first) confusion matrices printed in the
// original comparison table, with the algorithm and cost they came from.
struct ReferenceMatrix {
  const char* algorithm;
  int cost;
  std::array<std::uint64_t, 4> counts;  // dd, df, fd, ff
};

inline const std::array<ReferenceMatrix, 6>& comedy_confusion_matrices() {
  static const std::array<ReferenceMatrix, 6> m{{
      {"gentleboost", 1, {105, 169, 109, 409}},
      {"gentleboost", 5, {222, 52, 332, 186}},
      {"gentleboost", 2, {149, 125, 203, 315}},
      {"adaboost", 1, {104, 170, 81, 437}},
      {"adaboost", 5, {219, 55, 169, 349}},
      {"adaboost", 2, {147, 127, 169, 349}},
  }};
  return m;
}

}  // namespace oracle
