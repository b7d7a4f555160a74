#include <benchmark/benchmark.h>

#include <vector>

#include "costens/bagging.hpp"
#include "costens/boosting.hpp"
#include "costens/svm.hpp"
#include "costens/tree.hpp"

using namespace costens;

namespace {

// Survey-sized planted-signal data: d = 20 ordinal-ish features, 3 informative.
BinaryDataset survey_like(std::size_t n) {
  return synth_survey({n, 0.65, 20, {0, 1, 2}, 1.5, 7});
}

void BM_ClassificationTree(benchmark::State& state) {
  const auto data = survey_like(static_cast<std::size_t>(state.range(0)));
  const std::vector<double> w(data.n(), 1.0);
  const auto params = TreeParams::bagging_defaults();
  for (auto _ : state) benchmark::DoNotOptimize(fit_classification_tree(data, w, params));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClassificationTree)->RangeMultiplier(2)->Range(250, 4000)->Complexity();

void BM_BaggedEnsemble(benchmark::State& state) {
  const auto data = survey_like(1000);
  BaggingOptions o;
  o.n_trees = 100;
  o.threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_bagged(data, o));
}
BENCHMARK(BM_BaggedEnsemble)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_OobImportance(benchmark::State& state) {
  const auto data = survey_like(1000);
  BaggingOptions o;
  o.n_trees = 100;
  o.threads = 1;
  const auto e = fit_bagged(data, o);
  for (auto _ : state) benchmark::DoNotOptimize(permutation_importance(e, data, 3, 1));
}
BENCHMARK(BM_OobImportance)->Unit(benchmark::kMillisecond);

void BM_Boosting(benchmark::State& state) {
  const auto data = survey_like(1000);
  const auto algorithm = state.range(0) == 0 ? BoostAlgorithm::AdaBoostM1 : BoostAlgorithm::GentleBoost;
  BoostOptions o;
  o.max_rounds = 100;
  for (auto _ : state) benchmark::DoNotOptimize(fit_boosted(algorithm, data, CostMatrix(5, 1), o));
  state.SetLabel(algorithm_name(algorithm));
}
BENCHMARK(BM_Boosting)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LinearSvm(benchmark::State& state) {
  const auto data = survey_like(static_cast<std::size_t>(state.range(0)));
  SvmOptions o;
  for (auto _ : state) benchmark::DoNotOptimize(fit_linear_svm(data, o));
}
BENCHMARK(BM_LinearSvm)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
