#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "costens/cost.hpp"
#include "costens/dataset.hpp"

namespace costens {

struct SvmOptions {
  double c = 1.0;
  CostMatrix cost;
  double tol = 1e-3;
  std::size_t max_passes = 100;  // iteration budget is max_passes * n
};

// Linear soft-margin SVM in standardized feature space.
struct SvmModel {
  std::vector<std::string> feature_names;
  std::vector<double> mean;   // per-feature standardization
  std::vector<double> scale;  // 0 for constant features
  std::vector<double> weights;
  double bias = 0.0;
  double c_pos = 1.0;
  double c_neg = 1.0;
  double training_kkt_residual = 0.0;
  double dual_objective = 0.0;  // sum(alpha) - |w|^2 / 2
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> dual;  // training dual variables; not serialized

  std::vector<double> standardize(std::span<const double> row) const;
  double decision(std::span<const double> row) const;
  Label predict(std::span<const double> row) const { return label_from_score(decision(row)); }
};

SvmModel fit_linear_svm(const BinaryDataset& data, const SvmOptions& options);

Label predict_svm(const SvmModel& model, std::span<const double> row);

}  // namespace costens
