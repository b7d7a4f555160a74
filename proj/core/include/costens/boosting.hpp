#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "costens/cost.hpp"
#include "costens/dataset.hpp"
#include "costens/tree.hpp"

namespace costens {

enum class BoostAlgorithm : std::uint8_t { AdaBoostM1, GentleBoost };

const char* algorithm_name(BoostAlgorithm algorithm);

// Weighted errors are clamped to [kEpsClamp, 1 - kEpsClamp] before taking alpha.
inline constexpr double kEpsClamp = 1e-10;

struct EarlyStopSpec {
  std::size_t patience = 0;  // 0 disables early stopping
  double min_delta = 0.0;
  double validation_fraction = 0.2;

  bool enabled() const { return patience > 0; }
  static EarlyStopSpec defaults() { return {20, 0.0, 0.2}; }
  bool operator==(const EarlyStopSpec&) const = default;
};

struct EarlyStopDecision {
  bool stop = false;
  std::size_t best_round = 0;  // 1-based; 0 when there is no history
};

// Stop once the loss has not improved by more than min_delta for `patience`
// consecutive rounds.
EarlyStopDecision early_stop_check(std::span<const double> losses, const EarlyStopSpec& spec);

struct RoundRecord {
  double error = 0.0;  // weighted error of the round's learner before the update
  double alpha = 0.0;
  bool operator==(const RoundRecord&) const = default;
};

class BoostedEnsemble {
 public:
  BoostedEnsemble(BoostAlgorithm algorithm, CostMatrix cost, std::vector<std::string> feature_names,
                  std::vector<Tree> learners, std::vector<double> alphas, std::vector<RoundRecord> history);

  BoostAlgorithm algorithm() const { return algorithm_; }
  const CostMatrix& cost() const { return cost_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<Tree>& learners() const { return learners_; }
  const std::vector<double>& alphas() const { return alphas_; }
  const std::vector<RoundRecord>& history() const { return history_; }
  std::size_t rounds_used() const { return learners_.size(); }

  // Sum of alpha_m * k_m(row).
  double score(std::span<const double> row) const;
  Label predict(std::span<const double> row) const;
  BoostedEnsemble truncated(std::size_t rounds) const;

  bool operator==(const BoostedEnsemble&) const = default;

 private:
  BoostAlgorithm algorithm_;
  CostMatrix cost_;
  std::vector<std::string> feature_names_;
  std::vector<Tree> learners_;
  std::vector<double> alphas_;
  std::vector<RoundRecord> history_;
};

// Observation weights (normalized) and the audit trail of a boosting run.
struct BoostState {
  std::vector<double> weights;
  std::size_t round = 0;
  std::vector<RoundRecord> history;
};

enum class StepOutcome : std::uint8_t {
  Continue,   // round stored, training may go on
  Perfect,    // round stored with clamped alpha; nothing left to fit
  Discarded,  // weighted error >= 0.5, round dropped
};

// Sequential boosting driver. Each step() fits one weak learner on the current
// weights, records it, and reweights the training rows.
class Booster {
 public:
  Booster(const BinaryDataset& data, const CostMatrix& cost, BoostAlgorithm algorithm, TreeParams weak_params);

  StepOutcome step();
  bool finished() const { return finished_; }
  const BoostState& state() const { return state_; }
  const std::vector<Tree>& learners() const { return learners_; }
  // Predictions of the most recently stored learner on the training rows.
  const std::vector<double>& last_outputs() const { return last_outputs_; }
  BoostedEnsemble ensemble() const;

 private:
  const BinaryDataset& data_;
  CostMatrix cost_;
  BoostAlgorithm algorithm_;
  TreeParams weak_params_;
  BoostState state_;
  std::vector<Tree> learners_;
  std::vector<double> alphas_;
  std::vector<double> last_outputs_;
  bool finished_ = false;
};

struct BoostOptions {
  std::size_t max_rounds = 200;
  TreeParams weak_params = TreeParams::weak_learner_defaults();
  EarlyStopSpec stop;
  std::uint64_t seed = 42;
  // Optional caller-supplied validation set for early stopping; when null and
  // stopping is enabled, a stratified slice of the training data is held out.
  const BinaryDataset* validation = nullptr;
};

double round_error(std::span<const double> weights, std::span<const Label> predictions,
                   std::span<const Label> labels);

double alpha(double eps);

BoostedEnsemble fit_adaboost_m1(const BinaryDataset& data, const CostMatrix& cost, const BoostOptions& options);
BoostedEnsemble fit_gentleboost(const BinaryDataset& data, const CostMatrix& cost, const BoostOptions& options);
BoostedEnsemble fit_boosted(BoostAlgorithm algorithm, const BinaryDataset& data, const CostMatrix& cost,
                            const BoostOptions& options);

Label predict_boosted(const BoostedEnsemble& ensemble, std::span<const double> row);

}  // namespace costens
