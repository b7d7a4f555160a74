#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "costens/cost.hpp"
#include "costens/dataset.hpp"
#include "costens/model.hpp"

namespace costens {

// Rows are the true class (dislike, favor), columns the predicted class.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, 2>, 2> counts{};

  std::uint64_t at(Label truth, Label predicted) const { return counts[class_index(truth)][class_index(predicted)]; }
  std::uint64_t total() const { return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1]; }
  std::uint64_t correct() const { return counts[0][0] + counts[1][1]; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  bool operator==(const ConfusionMatrix&) const = default;
};

// Exact ratio of counts, kept in lowest terms.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Ratio of(std::uint64_t num, std::uint64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Ratio&) const = default;
};

struct Metrics {
  Ratio precision;
  Ratio recall;
  Ratio accuracy;
  Ratio error;  // 1 - accuracy
  Label positive_class = Label::Favor;
  bool degenerate_precision = false;  // no positive predictions
  bool degenerate_recall = false;     // no positive rows
};

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> truth);
Metrics metrics(const ConfusionMatrix& cm, Label positive_class = Label::Favor);

struct FoldResult {
  double error_in_sample = 0.0;
  double error_out_sample = 0.0;
  ConfusionMatrix held_out;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

struct CvReport {
  std::vector<FoldResult> folds;
  double mean_in_sample = 0.0;
  double mean_out_sample = 0.0;
  // Held-out predictions pooled over all folds; total equals n.
  ConfusionMatrix pooled;
  SplitPlan plan;
};

CvReport crossval(const BinaryDataset& data, const LearnerSpec& spec, std::size_t k, std::uint64_t seed);

struct SweepCell {
  Algorithm algorithm;
  CostMatrix cost;
  CvReport report;
};

// One cross-validated, pooled confusion matrix per (algorithm, cost) pair;
// cells are ordered algorithm-major.
std::vector<SweepCell> cost_sweep(const BinaryDataset& data, std::span<const Algorithm> algorithms,
                                  std::span<const CostMatrix> costs, std::uint64_t seed,
                                  const LearnerSpec& base = {}, std::size_t k = 5);

std::vector<CostMatrix> default_sweep_costs();

struct ComparisonRow {
  Algorithm algorithm;
  CvReport report;
};

// AdaBoost, cost-weighted bagged trees and the SVM baseline under one cost matrix.
std::vector<ComparisonRow> compare_algorithms(const BinaryDataset& data, const CostMatrix& cost, std::uint64_t seed,
                                              const LearnerSpec& base = {}, std::size_t k = 5);

// Long-format report rows: dataset,algorithm,cost_tag,metric,value
inline constexpr const char* kReportHeader = "dataset,algorithm,cost_tag,metric,value";
void write_comparison_csv(std::ostream& out, const std::string& dataset, const CostMatrix& cost,
                          std::span<const ComparisonRow> rows, bool header = true);
void write_comparison_table(std::ostream& out, const std::string& dataset, std::span<const ComparisonRow> rows);
void write_sweep_csv(std::ostream& out, const std::string& dataset, std::span<const SweepCell> cells,
                     bool header = true);
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm);
void write_metrics_csv(std::ostream& out, const std::string& dataset, const std::string& algorithm,
                       const std::string& cost_tag, const Metrics& m, bool header = true);

}  // namespace costens
