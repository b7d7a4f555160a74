#include "costens/eval.hpp"

#include <cstdio>
#include <numeric>
#include <ostream>

#include "costens/error.hpp"
#include "costens/rng.hpp"
#include "costens/text.hpp"

namespace costens {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  for (std::size_t t = 0; t < 2; ++t) {
    for (std::size_t p = 0; p < 2; ++p) counts[t][p] += other.counts[t][p];
  }
  return *this;
}

Ratio Ratio::of(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  const auto g = std::gcd(num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> truth) {
  if (predictions.size() != truth.size()) throw Error(ErrorCode::LengthMismatch, "predictions and truth differ in length");
  if (predictions.empty()) throw Error(ErrorCode::EmptyInput, "no predictions");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) ++cm.counts[class_index(truth[i])][class_index(predictions[i])];
  return cm;
}

Metrics metrics(const ConfusionMatrix& cm, Label positive_class) {
  const auto total = cm.total();
  if (total == 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix is empty");
  const Label negative = positive_class == Label::Favor ? Label::Dislike : Label::Favor;
  const auto tp = cm.at(positive_class, positive_class);
  const auto fp = cm.at(negative, positive_class);
  const auto fn = cm.at(positive_class, negative);

  Metrics m;
  m.positive_class = positive_class;
  m.degenerate_precision = tp + fp == 0;
  m.degenerate_recall = tp + fn == 0;
  m.precision = m.degenerate_precision ? Ratio{0, 1} : Ratio::of(tp, tp + fp);
  m.recall = m.degenerate_recall ? Ratio{0, 1} : Ratio::of(tp, tp + fn);
  m.accuracy = Ratio::of(cm.correct(), total);
  m.error = Ratio::of(total - cm.correct(), total);
  return m;
}

namespace {

ConfusionMatrix evaluate(const TrainedModel& model, const BinaryDataset& data) {
  std::vector<Label> predicted(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) predicted[i] = model_predict(model, data.row(i));
  return confusion(predicted, data.labels());
}

double error_rate(const ConfusionMatrix& cm) {
  return static_cast<double>(cm.total() - cm.correct()) / static_cast<double>(cm.total());
}

}  // namespace

CvReport crossval(const BinaryDataset& data, const LearnerSpec& spec, std::size_t k, std::uint64_t seed) {
  CvReport report;
  report.plan = stratified_kfold(data, k, seed);
  for (std::size_t f = 0; f < k; ++f) {
    const auto train_rows = report.plan.train_rows(f);
    const auto test_rows = report.plan.test_rows(f);
    const auto train = data.subset(train_rows);
    const auto test = data.subset(test_rows);
    const std::uint64_t fold_seed = Rng::stream(seed, 0xf01d, f).next();
    const auto model = train_model(train, spec, fold_seed);

    FoldResult fold;
    fold.n_train = train.n();
    fold.n_test = test.n();
    fold.held_out = evaluate(model, test);
    fold.error_in_sample = error_rate(evaluate(model, train));
    fold.error_out_sample = error_rate(fold.held_out);
    report.pooled += fold.held_out;
    report.folds.push_back(fold);
  }
  double in = 0.0;
  double out = 0.0;
  for (const auto& fold : report.folds) {
    in += fold.error_in_sample;
    out += fold.error_out_sample;
  }
  report.mean_in_sample = in / static_cast<double>(k);
  report.mean_out_sample = out / static_cast<double>(k);
  return report;
}

std::vector<CostMatrix> default_sweep_costs() { return {CostMatrix(1, 1), CostMatrix(5, 1), CostMatrix(2, 1)}; }

std::vector<SweepCell> cost_sweep(const BinaryDataset& data, std::span<const Algorithm> algorithms,
                                  std::span<const CostMatrix> costs, std::uint64_t seed, const LearnerSpec& base,
                                  std::size_t k) {
  const auto counts = data.class_counts();
  if (counts[0] == 0 || counts[1] == 0) throw Error(ErrorCode::SingleClassData, "both classes must be present");
  std::vector<SweepCell> cells;
  for (Algorithm algorithm : algorithms) {
    for (const CostMatrix& cost : costs) {
      LearnerSpec spec = base;
      spec.algorithm = algorithm;
      spec.cost = cost;
      cells.push_back({algorithm, cost, crossval(data, spec, k, seed)});
    }
  }
  return cells;
}

std::vector<ComparisonRow> compare_algorithms(const BinaryDataset& data, const CostMatrix& cost, std::uint64_t seed,
                                              const LearnerSpec& base, std::size_t k) {
  std::vector<ComparisonRow> rows;
  for (Algorithm algorithm : {Algorithm::AdaBoost, Algorithm::Bagged, Algorithm::Svm}) {
    LearnerSpec spec = base;
    spec.algorithm = algorithm;
    spec.cost = cost;
    rows.push_back({algorithm, crossval(data, spec, k, seed)});
  }
  return rows;
}

namespace {

void emit(std::ostream& out, const std::string& dataset, const std::string& algorithm, const std::string& cost_tag,
          const std::string& metric, const std::string& value) {
  out << csv_escape(dataset) << ',' << algorithm << ',' << cost_tag << ',' << metric << ',' << value << '\n';
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

void write_comparison_csv(std::ostream& out, const std::string& dataset, const CostMatrix& cost,
                          std::span<const ComparisonRow> rows, bool header) {
  if (header) out << kReportHeader << '\n';
  for (const auto& row : rows) {
    const auto name = algorithm_name(row.algorithm);
    emit(out, dataset, name, cost.tag(), "error_out_sample", text::format_double(row.report.mean_out_sample));
    emit(out, dataset, name, cost.tag(), "error_in_sample", text::format_double(row.report.mean_in_sample));
  }
}

void write_comparison_table(std::ostream& out, const std::string& dataset, std::span<const ComparisonRow> rows) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-18s", dataset.c_str());
  out << buf;
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%12s", algorithm_name(row.algorithm));
    out << buf;
  }
  out << '\n';
  for (int which = 0; which < 2; ++which) {
    std::snprintf(buf, sizeof(buf), "%-18s", which == 0 ? "Error-out-sample" : "Error-in-sample");
    out << buf;
    for (const auto& row : rows) {
      const double v = which == 0 ? row.report.mean_out_sample : row.report.mean_in_sample;
      std::snprintf(buf, sizeof(buf), "%12s", fixed3(v).c_str());
      out << buf;
    }
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::string& dataset, std::span<const SweepCell> cells, bool header) {
  if (header) out << kReportHeader << '\n';
  for (const auto& cell : cells) {
    const auto name = algorithm_name(cell.algorithm);
    const auto tag = cell.cost.tag();
    const auto& c = cell.report.pooled.counts;
    emit(out, dataset, name, tag, "cm_dislike_dislike", std::to_string(c[0][0]));
    emit(out, dataset, name, tag, "cm_dislike_favor", std::to_string(c[0][1]));
    emit(out, dataset, name, tag, "cm_favor_dislike", std::to_string(c[1][0]));
    emit(out, dataset, name, tag, "cm_favor_favor", std::to_string(c[1][1]));
    emit(out, dataset, name, tag, "error_out_sample", text::format_double(cell.report.mean_out_sample));
  }
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm) {
  out << "true_class,pred_dislike,pred_favor\n";
  out << "dislike," << cm.counts[0][0] << ',' << cm.counts[0][1] << '\n';
  out << "favor," << cm.counts[1][0] << ',' << cm.counts[1][1] << '\n';
}

void write_metrics_csv(std::ostream& out, const std::string& dataset, const std::string& algorithm,
                       const std::string& cost_tag, const Metrics& m, bool header) {
  if (header) out << kReportHeader << '\n';
  emit(out, dataset, algorithm, cost_tag, "positive_class", label_name(m.positive_class));
  emit(out, dataset, algorithm, cost_tag, "precision", text::format_double(m.precision.value()));
  emit(out, dataset, algorithm, cost_tag, "recall", text::format_double(m.recall.value()));
  emit(out, dataset, algorithm, cost_tag, "accuracy", text::format_double(m.accuracy.value()));
  emit(out, dataset, algorithm, cost_tag, "error", text::format_double(m.error.value()));
  emit(out, dataset, algorithm, cost_tag, "degenerate_precision", m.degenerate_precision ? "1" : "0");
  emit(out, dataset, algorithm, cost_tag, "degenerate_recall", m.degenerate_recall ? "1" : "0");
}

}  // namespace costens
