#include <doctest.h>

#include <sstream>

#include "costens/error.hpp"
#include "costens/eval.hpp"
#include "oracles.hpp"

using namespace costens;

namespace {

ConfusionMatrix from_counts(const std::array<std::uint64_t, 4>& c) {
  ConfusionMatrix cm;
  cm.counts = {{{c[0], c[1]}, {c[2], c[3]}}};
  return cm;
}

LearnerSpec quick(Algorithm a) {
  LearnerSpec s;
  s.algorithm = a;
  s.max_rounds = 20;
  s.n_trees = 15;
  s.threads = 1;
  return s;
}

}  // namespace

TEST_CASE("metrics from the printed comedy confusion matrices are exact rationals") {
  for (const auto& pm : oracle::comedy_confusion_matrices()) {
    const auto cm = from_counts(pm.counts);
    const auto m = metrics(cm);
    const auto [dd, df, fd, ff] = pm.counts;
    CHECK(dd + df == 274);
    CHECK(fd + ff == 518);
    CHECK(m.precision == Ratio::of(ff, ff + df));
    CHECK(m.recall == Ratio::of(ff, ff + fd));
    CHECK(m.accuracy == Ratio::of(dd + ff, 792));
    CHECK(m.error.num * m.accuracy.den + m.accuracy.num * m.error.den == m.error.den * m.accuracy.den);
  }
  const auto m = metrics(from_counts({219, 55, 169, 349}));
  CHECK(m.precision == Ratio{349, 404});
  CHECK(m.recall == Ratio{349, 518});
  CHECK(m.accuracy == Ratio{71, 99});  // 568/792 in lowest terms
  CHECK(Ratio::of(568, 792) == m.accuracy);
}

TEST_CASE("metrics for the dislike class and degenerate denominators") {
  const auto cm = from_counts({219, 55, 169, 349});
  const auto d = metrics(cm, Label::Dislike);
  CHECK(d.precision == Ratio::of(219, 219 + 169));
  CHECK(d.recall == Ratio::of(219, 274));
  CHECK(d.positive_class == Label::Dislike);

  const auto none = metrics(from_counts({5, 0, 3, 0}));
  CHECK(none.degenerate_precision);
  CHECK(none.precision == Ratio{0, 1});
  CHECK_FALSE(none.degenerate_recall);
  const auto no_pos = metrics(from_counts({5, 1, 0, 0}));
  CHECK(no_pos.degenerate_recall);
  CHECK_THROWS_AS(metrics(ConfusionMatrix{}), Error);
}

TEST_CASE("confusion counting") {
  const std::vector<Label> pred{Label::Favor, Label::Dislike, Label::Favor, Label::Favor};
  const std::vector<Label> truth{Label::Favor, Label::Favor, Label::Dislike, Label::Favor};
  const auto cm = confusion(pred, truth);
  CHECK(cm.at(Label::Favor, Label::Favor) == 2);
  CHECK(cm.at(Label::Favor, Label::Dislike) == 1);
  CHECK(cm.at(Label::Dislike, Label::Favor) == 1);
  CHECK(cm.at(Label::Dislike, Label::Dislike) == 0);
  const std::vector<Label> shorter{Label::Favor};
  CHECK_THROWS_AS(confusion(shorter, truth), Error);
}

TEST_CASE("property: cross-validation pools every row once; equal folds make mean error 1 - pooled accuracy") {
  // 60 dislike and 90 favor rows: both divisible by k = 5 and 3.
  const auto data = synth_survey({150, 0.6, 5, {0, 1}, 1.5, 17});
  for (std::size_t k : {3u, 5u}) {
    for (auto a : {Algorithm::AdaBoost, Algorithm::Bagged, Algorithm::Svm, Algorithm::Majority}) {
      const auto r = crossval(data, quick(a), k, 4);
      CHECK(r.pooled.total() == data.n());
      CHECK(r.folds.size() == k);
      for (const auto& f : r.folds) CHECK(f.n_test == data.n() / k);
      const double pooled_error = 1.0 - metrics(r.pooled).accuracy.value();
      CHECK(r.mean_out_sample == doctest::Approx(pooled_error).epsilon(1e-12));
      CHECK(r.mean_in_sample >= 0.0);
    }
  }
}

TEST_CASE("majority baseline errs on exactly the minority rows") {
  const auto data = synth_survey({100, 0.7, 3, {0}, 1.0, 2});
  const auto r = crossval(data, quick(Algorithm::Majority), 5, 1);
  CHECK(r.pooled.at(Label::Dislike, Label::Favor) == 30);
  CHECK(r.pooled.at(Label::Favor, Label::Favor) == 70);
  CHECK(r.mean_out_sample == doctest::Approx(0.3));
}

TEST_CASE("cost sweep is algorithm-major and reproducible") {
  const auto data = synth_survey({120, 0.65, 4, {0, 1}, 2.0, 6});
  const std::vector<Algorithm> algos{Algorithm::AdaBoost, Algorithm::GentleBoost};
  const auto costs = default_sweep_costs();
  REQUIRE(costs.size() == 3);
  CHECK(costs[1] == CostMatrix(5, 1));
  const auto cells = cost_sweep(data, algos, costs, 9, quick(Algorithm::AdaBoost), 4);
  REQUIRE(cells.size() == 6);
  CHECK(cells[0].algorithm == Algorithm::AdaBoost);
  CHECK(cells[2].cost == CostMatrix(2, 1));
  CHECK(cells[3].algorithm == Algorithm::GentleBoost);
  const auto again = cost_sweep(data, algos, costs, 9, quick(Algorithm::AdaBoost), 4);
  for (std::size_t c = 0; c < cells.size(); ++c) CHECK(again[c].report.pooled == cells[c].report.pooled);

  std::ostringstream csv;
  write_sweep_csv(csv, "comedy", cells);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == kReportHeader);
  CHECK(first == "comedy,adaboost,0-1-1-0,cm_dislike_dislike," +
                     std::to_string(cells[0].report.pooled.counts[0][0]));
}

TEST_CASE("comparison covers AdaBoost, bagged trees and the SVM") {
  const auto data = synth_survey({100, 0.5, 3, {0}, 1.0, 2});
  const auto rows = compare_algorithms(data, CostMatrix(1, 1), 3, quick(Algorithm::AdaBoost), 5);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].algorithm == Algorithm::AdaBoost);
  CHECK(rows[1].algorithm == Algorithm::Bagged);
  CHECK(rows[2].algorithm == Algorithm::Svm);
  std::ostringstream table;
  write_comparison_table(table, "demo", rows);
  CHECK(table.str().find("Error-out-sample") != std::string::npos);
  std::ostringstream csv;
  write_comparison_csv(csv, "demo", CostMatrix(1, 1), rows);
  CHECK(csv.str().find("demo,svm,0-1-1-0,error_in_sample,") != std::string::npos);
}

TEST_CASE("single-class data cannot be swept") {
  const auto data = oracle::make_dataset({{1}, {2}, {3}}, {1, 1, 1});
  const std::vector<Algorithm> algos{Algorithm::AdaBoost};
  const auto costs = default_sweep_costs();
  CHECK_THROWS_AS(cost_sweep(data, algos, costs, 1), Error);
}
