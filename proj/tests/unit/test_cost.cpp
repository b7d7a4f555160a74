#include <doctest.h>

#include <limits>
#include <numeric>

#include "costens/cost.hpp"
#include "costens/error.hpp"
#include "oracles.hpp"

using namespace costens;

namespace {

ErrorCode code_of(auto fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("cost matrix layout is (true, predicted) in class order dislike, favor") {
  const CostMatrix c(5, 1);
  CHECK(c.at(Label::Dislike, Label::Favor) == 5.0);
  CHECK(c.at(Label::Favor, Label::Dislike) == 1.0);
  CHECK(c.at(Label::Dislike, Label::Dislike) == 0.0);
  CHECK(c.miss_cost(Label::Dislike) == 5.0);
  CHECK(c.miss_cost(Label::Favor) == 1.0);
  CHECK(c.entries() == std::array<double, 4>{0, 5, 1, 0});
  CHECK(c.tag() == "0-5-1-0");
  CHECK(CostMatrix::parse("0,5,1,0") == c);
  CHECK(CostMatrix::parse(" 0, 2.5 ,1,0").at(Label::Dislike, Label::Favor) == 2.5);
  CHECK(CostMatrix() == CostMatrix(1, 1));
}

TEST_CASE("cost matrix validation") {
  CHECK(code_of([] { CostMatrix(-1, 1); }) == ErrorCode::InvalidCostMatrix);
  CHECK(code_of([] { CostMatrix(0, 0); }) == ErrorCode::InvalidCostMatrix);
  CHECK(code_of([] { CostMatrix(std::numeric_limits<double>::infinity(), 1); }) == ErrorCode::InvalidCostMatrix);
  CHECK(code_of([] { CostMatrix(std::numeric_limits<double>::quiet_NaN(), 1); }) == ErrorCode::InvalidCostMatrix);
  CHECK(code_of([] { CostMatrix::from_entries({1, 5, 1, 0}); }) == ErrorCode::InvalidCostMatrix);
  CHECK(code_of([] { CostMatrix::from_entries({0, 5, 1, 0.5}); }) == ErrorCode::InvalidCostMatrix);
  CHECK(code_of([] { CostMatrix::parse("0,5,1"); }) == ErrorCode::InvalidCostMatrix);
  CHECK(code_of([] { CostMatrix::parse("0,5,x,0"); }) == ErrorCode::InvalidCostMatrix);
  CHECK(code_of([] { CostMatrix::parse("0,-5,1,0"); }) == ErrorCode::InvalidCostMatrix);
  CHECK_NOTHROW(CostMatrix(0, 3));
}

TEST_CASE("initial weights follow misclassification cost and sum to one") {
  const auto data = oracle::make_dataset({{1}, {2}, {3}, {4}}, {-1, 1, 1, 1});
  const auto w = init_weights(data, CostMatrix(5, 1));
  CHECK(w[0] == doctest::Approx(5.0 / 8.0));
  CHECK(w[1] == doctest::Approx(1.0 / 8.0));
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));

  const auto uniform = init_weights(data, CostMatrix(1, 1));
  for (double v : uniform) CHECK(v == 0.25);

  const auto single = oracle::make_dataset({{1}, {2}}, {1, 1});
  CHECK(code_of([&] { init_weights(single, CostMatrix(1, 1)); }) == ErrorCode::SingleClassData);
}

TEST_CASE("property: rescaled cost matrices give bit-identical weights") {
  const auto data = synth_survey({97, 0.3, 2, {0}, 1.0, 5});
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{{1, 1}, {5, 1}, {2, 1}, {1, 7}, {0, 1}, {3, 0}}) {
    const auto base = init_weights(data, CostMatrix(a, b));
    for (double s : {0.5, 3.0, 100.0}) CHECK(init_weights(data, CostMatrix(s * a, s * b)) == base);
  }
}
