#include "costens/bagging.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "costens/error.hpp"
#include "costens/parallel.hpp"
#include "costens/rng.hpp"

namespace costens {

BaggedEnsemble::BaggedEnsemble(std::vector<Tree> trees, std::vector<std::vector<std::uint8_t>> in_bag,
                               std::vector<std::string> feature_names, TreeParams params, std::uint64_t seed,
                               std::optional<CostMatrix> cost)
    : trees_(std::move(trees)),
      in_bag_(std::move(in_bag)),
      feature_names_(std::move(feature_names)),
      params_(params),
      seed_(seed),
      cost_(cost) {
  if (trees_.empty()) throw Error(ErrorCode::EmptyEnsemble, "bagged ensemble has no trees");
  if (in_bag_.size() != trees_.size()) throw Error(ErrorCode::MaskMismatch, "one in-bag mask per tree required");
  for (const auto& mask : in_bag_) {
    if (mask.size() != in_bag_.front().size()) throw Error(ErrorCode::MaskMismatch, "in-bag masks differ in length");
  }
  for (const auto& tree : trees_) {
    if (tree.n_features() != feature_names_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "tree width differs from feature count");
    }
  }
}

double BaggedEnsemble::vote_margin(std::span<const double> row) const {
  double margin = 0.0;
  for (const auto& tree : trees_) margin += tree.predict(row);
  return margin;
}

Label BaggedEnsemble::predict(std::span<const double> row) const { return label_from_score(vote_margin(row)); }

double BaggedEnsemble::oob_fraction(std::size_t tree) const {
  const auto& mask = in_bag_.at(tree);
  const auto oob = std::count(mask.begin(), mask.end(), std::uint8_t{0});
  return static_cast<double>(oob) / static_cast<double>(mask.size());
}

Label predict_bagged(const BaggedEnsemble& ensemble, std::span<const double> row) {
  return ensemble.predict(row);
}

BaggedEnsemble fit_bagged(const BinaryDataset& data, const BaggingOptions& options) {
  if (data.n() < 2) throw Error(ErrorCode::EmptyData, "bagging needs at least two rows");
  if (options.n_trees < 1) throw Error(ErrorCode::InvalidArgument, "n_trees must be >= 1");
  options.params.validate();

  const std::size_t n = data.n();
  std::vector<double> cumulative;
  if (options.cost) {
    auto w = init_weights(data, *options.cost);
    cumulative.resize(n);
    std::partial_sum(w.begin(), w.end(), cumulative.begin());
  }

  std::vector<Tree> trees(options.n_trees);
  std::vector<std::vector<std::uint8_t>> in_bag(options.n_trees);
  parallel_for(options.n_trees, options.threads, [&](std::size_t t) {
    Rng rng = Rng::stream(options.seed, t);
    std::vector<double> multiplicity(n, 0.0);
    for (std::size_t draw = 0; draw < n; ++draw) {
      std::size_t r;
      if (cumulative.empty()) {
        r = rng.index(n);
      } else {
        const double u = rng.uniform() * cumulative.back();
        r = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        r = std::min(r, n - 1);
      }
      multiplicity[r] += 1.0;
    }
    in_bag[t].resize(n);
    for (std::size_t i = 0; i < n; ++i) in_bag[t][i] = multiplicity[i] > 0.0 ? 1 : 0;
    trees[t] = fit_classification_tree(data, multiplicity, options.params);
  });
  return BaggedEnsemble(std::move(trees), std::move(in_bag), data.feature_names(), options.params, options.seed,
                        options.cost);
}

namespace {

void check_alignment(const BaggedEnsemble& ensemble, const BinaryDataset& data) {
  if (ensemble.n_train() != data.n()) {
    throw Error(ErrorCode::MaskMismatch, "in-bag masks cover " + std::to_string(ensemble.n_train()) +
                                             " rows but data has " + std::to_string(data.n()));
  }
  if (ensemble.feature_names().size() != data.d()) {
    throw Error(ErrorCode::DimensionMismatch, "data width differs from ensemble");
  }
}

}  // namespace

OobCurve oob_error_curve(const BaggedEnsemble& ensemble, const BinaryDataset& data, std::size_t threads) {
  check_alignment(ensemble, data);
  const std::size_t n = data.n();
  const std::size_t trees = ensemble.size();

  // Per-tree predictions on that tree's out-of-bag rows (0 where in-bag).
  std::vector<std::vector<double>> oob_pred(trees);
  parallel_for(trees, threads, [&](std::size_t t) {
    oob_pred[t].assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!ensemble.in_bag()[t][i]) oob_pred[t][i] = ensemble.trees()[t].predict(data.row(i));
    }
  });

  OobCurve curve;
  curve.error.reserve(trees);
  curve.all_in_bag.reserve(trees);
  std::vector<double> margin(n, 0.0);
  std::vector<std::uint8_t> voted(n, 0);
  std::vector<std::uint8_t> wrong(n, 0);
  std::size_t n_voted = 0;
  std::size_t n_wrong = 0;
  for (std::size_t t = 0; t < trees; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      if (ensemble.in_bag()[t][i]) continue;
      margin[i] += oob_pred[t][i];
      if (!voted[i]) {
        voted[i] = 1;
        ++n_voted;
      }
      const std::uint8_t now_wrong = label_from_score(margin[i]) != data.label(i) ? 1 : 0;
      if (now_wrong != wrong[i]) {
        now_wrong ? ++n_wrong : --n_wrong;
        wrong[i] = now_wrong;
      }
    }
    if (n_voted == 0) {
      curve.error.push_back(0.0);
      curve.all_in_bag.push_back(1);
    } else {
      curve.error.push_back(static_cast<double>(n_wrong) / static_cast<double>(n_voted));
      curve.all_in_bag.push_back(0);
    }
  }
  return curve;
}

ImportanceReport permutation_importance(const BaggedEnsemble& ensemble, const BinaryDataset& data,
                                        std::uint64_t seed, std::size_t threads) {
  check_alignment(ensemble, data);
  const std::size_t n = data.n();
  const std::size_t d = data.d();
  const std::size_t trees = ensemble.size();

  std::vector<std::vector<double>> delta(trees);  // empty when the tree has no OOB rows
  parallel_for(trees, threads, [&](std::size_t t) {
    const Tree& tree = ensemble.trees()[t];
    std::vector<std::size_t> oob;
    for (std::size_t i = 0; i < n; ++i) {
      if (!ensemble.in_bag()[t][i]) oob.push_back(i);
    }
    if (oob.empty()) return;

    std::size_t base_wrong = 0;
    for (std::size_t i : oob) base_wrong += label_from_score(tree.predict(data.row(i))) != data.label(i);

    delta[t].assign(d, 0.0);
    std::vector<double> scratch(d);
    std::vector<double> column(oob.size());
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < oob.size(); ++k) column[k] = data.at(oob[k], j);
      Rng rng = Rng::stream(seed, t, j);
      rng.shuffle(std::span<double>(column));
      std::size_t wrong = 0;
      for (std::size_t k = 0; k < oob.size(); ++k) {
        auto row = data.row(oob[k]);
        std::copy(row.begin(), row.end(), scratch.begin());
        scratch[j] = column[k];
        wrong += label_from_score(tree.predict(scratch)) != data.label(oob[k]);
      }
      delta[t][j] = (static_cast<double>(wrong) - static_cast<double>(base_wrong)) / static_cast<double>(oob.size());
    }
  });

  ImportanceReport report;
  report.feature_names = data.feature_names();
  report.scores.assign(d, 0.0);
  report.mean_delta.assign(d, 0.0);
  report.stddev_delta.assign(d, 0.0);
  std::size_t used = 0;
  for (const auto& row : delta) used += !row.empty();
  for (std::size_t j = 0; j < d; ++j) {
    if (used == 0) break;
    double sum = 0.0;
    for (const auto& row : delta) {
      if (!row.empty()) sum += row[j];
    }
    const double mean = sum / static_cast<double>(used);
    double ss = 0.0;
    for (const auto& row : delta) {
      if (!row.empty()) ss += (row[j] - mean) * (row[j] - mean);
    }
    const double sd = used > 1 ? std::sqrt(ss / static_cast<double>(used - 1)) : 0.0;
    report.mean_delta[j] = mean;
    report.stddev_delta[j] = sd;
    report.scores[j] = sd > 0.0 ? mean / sd : 0.0;
  }
  return report;
}

std::vector<std::string> select_features(const ImportanceReport& report, double threshold) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < report.scores.size(); ++j) {
    if (report.scores[j] > threshold) out.push_back(report.feature_names[j]);
  }
  return out;
}

}  // namespace costens
