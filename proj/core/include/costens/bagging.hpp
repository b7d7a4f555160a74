#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "costens/cost.hpp"
#include "costens/dataset.hpp"
#include "costens/tree.hpp"

namespace costens {

struct BaggingOptions {
  std::size_t n_trees = 400;
  TreeParams params = TreeParams::bagging_defaults();
  std::uint64_t seed = 42;
  // When set, bootstrap rows are drawn proportionally to init_weights(data, cost).
  std::optional<CostMatrix> cost;
  std::size_t threads = 0;  // 0: hardware concurrency
};

class BaggedEnsemble {
 public:
  BaggedEnsemble(std::vector<Tree> trees, std::vector<std::vector<std::uint8_t>> in_bag,
                 std::vector<std::string> feature_names, TreeParams params, std::uint64_t seed,
                 std::optional<CostMatrix> cost = std::nullopt);

  std::size_t size() const { return trees_.size(); }
  std::size_t n_train() const { return in_bag_.empty() ? 0 : in_bag_.front().size(); }
  const std::vector<Tree>& trees() const { return trees_; }
  const std::vector<std::vector<std::uint8_t>>& in_bag() const { return in_bag_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const TreeParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  const std::optional<CostMatrix>& cost() const { return cost_; }

  // Favor votes minus dislike votes.
  double vote_margin(std::span<const double> row) const;
  Label predict(std::span<const double> row) const;
  double oob_fraction(std::size_t tree) const;

  bool operator==(const BaggedEnsemble&) const = default;

 private:
  std::vector<Tree> trees_;
  std::vector<std::vector<std::uint8_t>> in_bag_;
  std::vector<std::string> feature_names_;
  TreeParams params_;
  std::uint64_t seed_ = 0;
  std::optional<CostMatrix> cost_;
};

struct OobCurve {
  std::vector<double> error;        // error[t-1]: OOB vote error of the first t trees
  std::vector<std::uint8_t> all_in_bag;  // set where no row was out-of-bag yet (error reported as 0)
};

struct ImportanceReport {
  std::vector<std::string> feature_names;
  std::vector<double> scores;
  std::vector<double> mean_delta;    // mean per-tree OOB error increase
  std::vector<double> stddev_delta;  // sample stddev of the per-tree increase
  std::string method = "oob-permutation";
  double threshold_used = 0.1;
};

BaggedEnsemble fit_bagged(const BinaryDataset& data, const BaggingOptions& options);

Label predict_bagged(const BaggedEnsemble& ensemble, std::span<const double> row);

OobCurve oob_error_curve(const BaggedEnsemble& ensemble, const BinaryDataset& data, std::size_t threads = 0);

ImportanceReport permutation_importance(const BaggedEnsemble& ensemble, const BinaryDataset& data,
                                        std::uint64_t seed, std::size_t threads = 0);

// Names with score strictly above the threshold, in report order.
std::vector<std::string> select_features(const ImportanceReport& report, double threshold = 0.1);

}  // namespace costens
