#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "costens/dataset.hpp"
#include "costens/error.hpp"
#include "costens/rng.hpp"
#include "oracles.hpp"

using namespace costens;

namespace {

SurveyTable parse(const std::string& csv, const std::string& target = "Comedy") {
  std::istringstream in(csv);
  return parse_survey_csv(in, target);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected costens::Error");
  return ErrorCode::IoError;
}

SurveyTable table_with_counts(const std::array<int, 5>& counts) {
  std::string csv = "Genre,Age\n";
  for (int v = 1; v <= 5; ++v) {
    for (int k = 0; k < counts[v - 1]; ++k) csv += std::to_string(v) + ",3\n";
  }
  return parse(csv, "Genre");
}

}  // namespace

TEST_CASE("survey csv: empty and non-numeric cells are missing") {
  const auto t = parse("Comedy,Music,Gender\n5,3,female\n4,,male\n2,1,\n");
  CHECK(t.n_rows() == 3);
  CHECK(t.n_cols() == 3);
  CHECK(t.at(0, 0) == 5);
  CHECK_FALSE(t.at(1, 1).has_value());
  CHECK_FALSE(t.at(0, 2).has_value());
  CHECK(t.column_index("Music") == 1u);
  CHECK_FALSE(t.column_index("Nope").has_value());
}

TEST_CASE("survey csv: out-of-range values name row and column") {
  try {
    parse("Comedy,Music\n5,3\n4,7\n");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValueOutOfRange);
    const std::string what = e.what();
    CHECK(what.find("row 2") != std::string::npos);
    CHECK(what.find("Music") != std::string::npos);
  }
  CHECK(code_of([] { parse("Comedy,Music\n5,2.5\n"); }) == ErrorCode::ValueOutOfRange);
  CHECK(code_of([] { parse("Comedy,Music\n0,2\n"); }) == ErrorCode::ValueOutOfRange);
}

TEST_CASE("survey csv: header problems") {
  CHECK(code_of([] { parse("Music,Dance\n1,2\n"); }) == ErrorCode::MissingTargetColumn);
  CHECK(code_of([] { parse(""); }) == ErrorCode::MalformedHeader);
  CHECK(code_of([] { parse("Comedy,Comedy\n1,2\n"); }) == ErrorCode::MalformedHeader);
  CHECK(code_of([] { parse("Comedy,Music\n1,2,3\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_survey_csv("/nonexistent/file.csv", "Comedy"); }) == ErrorCode::FileNotFound);
}

TEST_CASE("binarize: favor iff value >= threshold, listwise deletion counted") {
  const auto t = parse("Comedy,Music,Gender\n5,3,female\n3,2,male\n4,,male\n,1,male\n1,5,female\n");
  const auto d = binarize(t, "Comedy");
  CHECK(d.n() == 3);
  CHECK(d.dropped_rows() == 2);
  CHECK(d.feature_names() == std::vector<std::string>{"Music"});
  CHECK(d.labels() == std::vector<Label>{Label::Favor, Label::Dislike, Label::Dislike});
  CHECK(d.target_name() == "Comedy");

  const auto d3 = binarize(t, "Comedy", 3);
  CHECK(d3.labels() == std::vector<Label>{Label::Favor, Label::Favor, Label::Dislike});
  CHECK(code_of([&] { binarize(t, "Comedy", 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { binarize(t, "Comedy", 6); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { binarize(t, "Drama", 4); }) == ErrorCode::MissingTargetColumn);
}

TEST_CASE("binarize: every row dropped is an error") {
  const auto t = parse("Comedy,Music\n5,\n,2\n");
  CHECK(code_of([&] { binarize(t, "Comedy"); }) == ErrorCode::EmptyDataset);
}

TEST_CASE("imbalance profile from per-scale counts") {
  const auto p = imbalance_profile(table_with_counts({2, 20, 77, 220, 571}), "Genre");
  CHECK(p.per_scale_counts == std::array<std::size_t, 5>{2, 20, 77, 220, 571});
  CHECK(p.dislike_count == 99);
  CHECK(p.favor_count == 791);
  CHECK(p.minority_class == Label::Dislike);
  CHECK(p.ratio == doctest::Approx(791.0 / 99.0));

  const auto w = imbalance_profile(table_with_counts({329, 279, 169, 68, 45}), "Genre");
  CHECK(w.minority_class == Label::Favor);
  CHECK(w.ratio == doctest::Approx(777.0 / 113.0));

  const auto one = imbalance_profile(table_with_counts({0, 0, 0, 3, 4}), "Genre");
  CHECK(one.degenerate);
  CHECK(std::isinf(one.ratio));
}

TEST_CASE("property: stratified folds partition rows and balance each class") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(seed);
    const std::size_t n = 20 + rng.index(80);
    const std::size_t k = 2 + rng.index(5);
    SynthSpec spec{n, 0.2 + 0.6 * rng.uniform(), 3, {0}, 1.0, seed};
    const auto data = synth_survey(spec);
    const auto counts = data.class_counts();
    if (counts[0] < k || counts[1] < k) continue;
    const auto plan = stratified_kfold(data, k, seed);

    std::vector<int> seen(n, 0);
    std::vector<std::array<std::size_t, 2>> per_fold(k);
    for (std::size_t f = 0; f < k; ++f) {
      const auto test = plan.test_rows(f);
      const auto train = plan.train_rows(f);
      CHECK(test.size() + train.size() == n);
      for (auto i : test) {
        ++seen[i];
        ++per_fold[f][class_index(data.label(i))];
      }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    for (std::size_t c = 0; c < 2; ++c) {
      std::size_t lo = n, hi = 0;
      for (const auto& pf : per_fold) {
        lo = std::min(lo, pf[c]);
        hi = std::max(hi, pf[c]);
      }
      CHECK(hi - lo <= 1);
    }
    CHECK(stratified_kfold(data, k, seed).fold_assignment == plan.fold_assignment);
  }
}

TEST_CASE("stratified folds reject k larger than a class") {
  const auto data = oracle::make_dataset({{1}, {2}, {3}, {4}}, {-1, 1, 1, 1});
  CHECK(code_of([&] { stratified_kfold(data, 2, 1); }) == ErrorCode::TooFewSamples);
  CHECK(code_of([&] { stratified_kfold(data, 1, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("synthetic survey: counts, range and determinism") {
  const SynthSpec spec{792, 518.0 / 792.0, 8, {0, 1, 2}, 1.5, 7};
  const auto a = synth_survey(spec);
  const auto b = synth_survey(spec);
  CHECK(a == b);
  CHECK(a.class_counts() == std::array<std::size_t, 2>{274, 518});
  for (double v : a.features()) {
    CHECK(v >= 1.0);
    CHECK(v <= 5.0);
    CHECK(v == std::round(v));
  }
  auto other = spec;
  other.seed = 8;
  CHECK_FALSE(synth_survey(other) == a);
  CHECK(code_of([] { synth_survey({10, 1.0, 2, {}, 1.0, 0}); }) == ErrorCode::InvalidFraction);
  CHECK(code_of([] { synth_survey({10, 0.5, 2, {2}, 1.0, 0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("dataset file round trip") {
  const auto data = synth_survey({40, 0.3, 4, {1}, 1.0, 3});
  std::stringstream ss;
  write_dataset(ss, data);
  CHECK(ss.str().rfind(kDatasetMagic, 0) == 0);
  CHECK(read_dataset(ss) == data);

  std::istringstream bad("#costens-dataset v9\n");
  CHECK(code_of([&] { read_dataset(bad); }) == ErrorCode::VersionMismatch);
}

TEST_CASE("feature selection and column replacement") {
  const auto data = oracle::make_dataset({{1, 2, 3}, {4, 5, 6}}, {-1, 1});
  const std::vector<std::string> names{"x2", "x0"};
  const auto picked = data.with_features(names);
  CHECK(picked.feature_names() == names);
  CHECK(picked.at(1, 0) == 6.0);
  CHECK(picked.at(1, 1) == 4.0);
  const std::vector<std::string> unknown{"x9"};
  CHECK(code_of([&] { data.with_features(unknown); }) == ErrorCode::SchemaMismatch);

  const std::vector<double> col{7, 8};
  const auto replaced = data.with_column(1, col);
  CHECK(replaced.at(0, 1) == 7.0);
  CHECK(replaced.at(0, 0) == 1.0);
}

TEST_CASE("csv field splitting honours quotes") {
  CHECK(split_csv_line("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
  CHECK(split_csv_line("\"say \"\"hi\"\"\",2") == std::vector<std::string>{"say \"hi\"", "2"});
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
}
