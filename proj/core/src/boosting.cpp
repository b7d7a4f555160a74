#include "costens/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "costens/error.hpp"

namespace costens {

const char* algorithm_name(BoostAlgorithm algorithm) {
  return algorithm == BoostAlgorithm::AdaBoostM1 ? "adaboost" : "gentleboost";
}

EarlyStopDecision early_stop_check(std::span<const double> losses, const EarlyStopSpec& spec) {
  if (spec.patience < 1) throw Error(ErrorCode::InvalidArgument, "patience must be >= 1");
  if (losses.empty()) return {};
  std::size_t best = 0;
  for (std::size_t m = 1; m < losses.size(); ++m) {
    if (losses[m] < losses[best] - spec.min_delta) best = m;
  }
  return {losses.size() - (best + 1) >= spec.patience, best + 1};
}

BoostedEnsemble::BoostedEnsemble(BoostAlgorithm algorithm, CostMatrix cost, std::vector<std::string> feature_names,
                                 std::vector<Tree> learners, std::vector<double> alphas,
                                 std::vector<RoundRecord> history)
    : algorithm_(algorithm),
      cost_(cost),
      feature_names_(std::move(feature_names)),
      learners_(std::move(learners)),
      alphas_(std::move(alphas)),
      history_(std::move(history)) {
  if (learners_.size() != alphas_.size() || history_.size() != learners_.size()) {
    throw Error(ErrorCode::LengthMismatch, "learners, alphas and history must have equal length");
  }
  for (double a : alphas_) {
    if (algorithm_ == BoostAlgorithm::AdaBoostM1 && !(a > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "AdaBoost.M1 alphas must be positive");
    }
    if (algorithm_ == BoostAlgorithm::GentleBoost && a != 1.0) {
      throw Error(ErrorCode::InvalidArgument, "GentleBoost alphas must equal 1");
    }
  }
}

double BoostedEnsemble::score(std::span<const double> row) const {
  if (learners_.empty()) throw Error(ErrorCode::EmptyEnsemble, "boosted ensemble has no learners");
  if (row.size() != feature_names_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "row width differs from ensemble feature count");
  }
  double s = 0.0;
  for (std::size_t m = 0; m < learners_.size(); ++m) s += alphas_[m] * learners_[m].predict(row);
  return s;
}

Label BoostedEnsemble::predict(std::span<const double> row) const { return label_from_score(score(row)); }

BoostedEnsemble BoostedEnsemble::truncated(std::size_t rounds) const {
  rounds = std::min(rounds, learners_.size());
  return BoostedEnsemble(algorithm_, cost_, feature_names_,
                         std::vector<Tree>(learners_.begin(), learners_.begin() + rounds),
                         std::vector<double>(alphas_.begin(), alphas_.begin() + rounds),
                         std::vector<RoundRecord>(history_.begin(), history_.begin() + rounds));
}

Label predict_boosted(const BoostedEnsemble& ensemble, std::span<const double> row) { return ensemble.predict(row); }

double round_error(std::span<const double> weights, std::span<const Label> predictions,
                   std::span<const Label> labels) {
  if (weights.size() != predictions.size() || weights.size() != labels.size()) {
    throw Error(ErrorCode::LengthMismatch, "weights, predictions and labels must have equal length");
  }
  double wrong = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    total += weights[i];
    if (predictions[i] != labels[i]) wrong += weights[i];
  }
  if (!(total > 0.0)) throw Error(ErrorCode::AllWeightsZero, "weights sum to zero");
  return wrong / total;
}

double alpha(double eps) {
  const double e = std::clamp(eps, kEpsClamp, 1.0 - kEpsClamp);
  return 0.5 * std::log((1.0 - e) / e);
}

Booster::Booster(const BinaryDataset& data, const CostMatrix& cost, BoostAlgorithm algorithm,
                 TreeParams weak_params)
    : data_(data), cost_(cost), algorithm_(algorithm), weak_params_(weak_params) {
  weak_params_.validate();
  state_.weights = init_weights(data_, cost_);
}

StepOutcome Booster::step() {
  if (finished_) return StepOutcome::Discarded;
  const std::size_t n = data_.n();
  std::vector<double> outputs(n);
  std::vector<Label> predicted(n);
  Tree learner;
  try {
    if (algorithm_ == BoostAlgorithm::AdaBoostM1) {
      learner = fit_classification_tree(data_, state_.weights, weak_params_);
    } else {
      std::vector<double> targets(n);
      for (std::size_t i = 0; i < n; ++i) targets[i] = sign_of(data_.label(i));
      learner = fit_regression_tree(data_, targets, state_.weights, weak_params_);
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::WeakLearnerFailure, e.what());
  }
  for (std::size_t i = 0; i < n; ++i) {
    outputs[i] = learner.predict(data_.row(i));
    predicted[i] = label_from_score(outputs[i]);
  }
  const double eps = round_error(state_.weights, predicted, data_.labels());

  double a = 1.0;
  StepOutcome outcome = StepOutcome::Continue;
  if (algorithm_ == BoostAlgorithm::AdaBoostM1) {
    if (eps >= 0.5) {
      finished_ = true;
      return StepOutcome::Discarded;
    }
    a = alpha(eps);
    if (eps <= kEpsClamp) outcome = StepOutcome::Perfect;
  } else if (std::all_of(outputs.begin(), outputs.end(), [](double f) { return f == 0.0; })) {
    // A zero learner leaves the weights unchanged; every later round would repeat it.
    outcome = StepOutcome::Perfect;
  }

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    state_.weights[i] *= std::exp(-a * sign_of(data_.label(i)) * outputs[i]);
    total += state_.weights[i];
  }
  for (double& w : state_.weights) w /= total;

  ++state_.round;
  state_.history.push_back({eps, a});
  learners_.push_back(std::move(learner));
  alphas_.push_back(a);
  last_outputs_ = std::move(outputs);
  if (outcome != StepOutcome::Continue) finished_ = true;
  return outcome;
}

BoostedEnsemble Booster::ensemble() const {
  return BoostedEnsemble(algorithm_, cost_, data_.feature_names(), learners_, alphas_, state_.history);
}

BoostedEnsemble fit_boosted(BoostAlgorithm algorithm, const BinaryDataset& data, const CostMatrix& cost,
                            const BoostOptions& options) {
  if (options.max_rounds < 1) throw Error(ErrorCode::InvalidArgument, "max_rounds must be >= 1");
  const auto counts = data.class_counts();
  if (counts[0] == 0 || counts[1] == 0) throw Error(ErrorCode::SingleClassData, "both classes must be present");

  const BinaryDataset* train = &data;
  const BinaryDataset* validation = options.validation;
  std::optional<BinaryDataset> train_part;
  std::optional<BinaryDataset> held_out;
  if (options.stop.enabled() && validation == nullptr) {
    const double frac = options.stop.validation_fraction;
    if (!(frac > 0.0 && frac < 1.0)) throw Error(ErrorCode::InvalidFraction, "validation_fraction must be in (0, 1)");
    const auto k = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(1.0 / frac)));
    const SplitPlan plan = stratified_kfold(data, k, options.seed);
    const auto train_rows = plan.train_rows(0);
    const auto test_rows = plan.test_rows(0);
    train_part.emplace(data.subset(train_rows));
    held_out.emplace(data.subset(test_rows));
    train = &*train_part;
    validation = &*held_out;
  }

  Booster booster(*train, cost, algorithm, options.weak_params);
  std::vector<double> val_weights;
  std::vector<double> val_score;
  std::vector<double> losses;
  if (options.stop.enabled()) {
    val_weights = init_weights(*validation, cost);
    val_score.assign(validation->n(), 0.0);
  }

  std::size_t keep = 0;
  while (booster.state().round < options.max_rounds && !booster.finished()) {
    if (booster.step() == StepOutcome::Discarded) break;
    keep = booster.learners().size();
    if (!options.stop.enabled()) continue;

    // Cost-weighted exponential loss on the validation rows.
    const Tree& latest = booster.learners().back();
    const double a = booster.state().history.back().alpha;
    double loss = 0.0;
    for (std::size_t i = 0; i < validation->n(); ++i) {
      val_score[i] += a * latest.predict(validation->row(i));
      loss += val_weights[i] * std::exp(-sign_of(validation->label(i)) * val_score[i]);
    }
    losses.push_back(loss);
    const auto decision = early_stop_check(losses, options.stop);
    if (decision.stop) {
      keep = decision.best_round;
      break;
    }
  }
  if (booster.learners().empty()) {
    throw Error(ErrorCode::WeakLearnerFailure, "first weak learner was no better than chance");
  }
  auto ensemble = booster.ensemble();
  return keep < ensemble.rounds_used() ? ensemble.truncated(keep) : ensemble;
}

BoostedEnsemble fit_adaboost_m1(const BinaryDataset& data, const CostMatrix& cost, const BoostOptions& options) {
  return fit_boosted(BoostAlgorithm::AdaBoostM1, data, cost, options);
}

BoostedEnsemble fit_gentleboost(const BinaryDataset& data, const CostMatrix& cost, const BoostOptions& options) {
  return fit_boosted(BoostAlgorithm::GentleBoost, data, cost, options);
}

}  // namespace costens
