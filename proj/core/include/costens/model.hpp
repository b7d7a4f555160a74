#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "costens/bagging.hpp"
#include "costens/boosting.hpp"
#include "costens/cost.hpp"
#include "costens/dataset.hpp"
#include "costens/svm.hpp"

namespace costens {

enum class Algorithm : std::uint8_t { AdaBoost, GentleBoost, Bagged, Svm, Majority };

const char* algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

// Constant predictor of the (unweighted) training majority class.
struct MajorityModel {
  std::vector<std::string> feature_names;
  Label label = Label::Dislike;
  bool operator==(const MajorityModel&) const = default;
};

// Everything needed to train one learner; shared by the CLI and the
// cross-validation drivers.
struct LearnerSpec {
  Algorithm algorithm = Algorithm::AdaBoost;
  CostMatrix cost;
  std::size_t max_rounds = 200;
  TreeParams weak_params = TreeParams::weak_learner_defaults();
  EarlyStopSpec stop = EarlyStopSpec::defaults();
  std::size_t n_trees = 400;
  TreeParams bag_params = TreeParams::bagging_defaults();
  // Bagging draws cost-weighted bootstrap samples unless this is false.
  bool cost_weighted_bagging = true;
  double svm_c = 1.0;
  double svm_tol = 1e-3;
  std::size_t svm_max_passes = 100;
  std::size_t threads = 0;
};

using TrainedModel = std::variant<BaggedEnsemble, BoostedEnsemble, SvmModel, MajorityModel>;

TrainedModel train_model(const BinaryDataset& data, const LearnerSpec& spec, std::uint64_t seed);

// Signed confidence: vote margin, boosted score, SVM decision value or +/-1.
double model_score(const TrainedModel& model, std::span<const double> row);
Label model_predict(const TrainedModel& model, std::span<const double> row);
const std::vector<std::string>& model_features(const TrainedModel& model);
std::string model_kind(const TrainedModel& model);

// Versioned text container; see FORMATS.md.
inline constexpr const char* kModelMagic = "costens-model v1";
void save_model(std::ostream& out, const TrainedModel& model);
TrainedModel load_model(std::istream& in);

void write_tree(std::ostream& out, const Tree& tree);
Tree read_tree(std::istream& in);

}  // namespace costens
