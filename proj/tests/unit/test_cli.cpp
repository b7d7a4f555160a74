#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "costens");
  std::ostringstream out, err;
  const int code = costens::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("costens_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& leaf) const { return (path / leaf).string(); }
};

}  // namespace

TEST_CASE("synth, train and predict round trip") {
  TempDir dir("roundtrip");
  REQUIRE(cli({"synth", "--n", "120", "--d", "4", "--informative", "0,1", "--output-dir", dir.path.string()}).code == 0);
  const auto data = dir / "dataset.csv";
  REQUIRE(fs::exists(data));
  const auto train = cli({"train", "--input", data, "--rounds", "20", "--output-dir", dir / "model"});
  REQUIRE(train.code == 0);
  CHECK(fs::exists(dir / "model/model.txt"));
  CHECK(fs::exists(dir / "model/resolved_config.json"));

  const auto predict = cli({"predict", "--model", dir / "model/model.txt", "--input", data, "--output",
                            dir / "pred.csv", "--output-dir", dir / "pred"});
  REQUIRE(predict.code == 0);
  std::istringstream lines(slurp(dir / "pred.csv"));
  std::string header;
  std::getline(lines, header);
  CHECK(header == "label,f0,f1,f2,f3,predicted_label,score");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 120);
}

TEST_CASE("predict: missing features are a schema error; header-only input is fine") {
  TempDir dir("schema");
  REQUIRE(cli({"synth", "--n", "60", "--d", "3", "--informative", "0", "--output-dir", dir.path.string()}).code == 0);
  REQUIRE(cli({"train", "--input", dir / "dataset.csv", "--algorithm", "majority", "--output-dir",
               dir.path.string()}).code == 0);
  {
    std::ofstream(dir / "narrow.csv") << "f0,f1,extra\n1,2,3\n";
  }
  const auto bad = cli({"predict", "--model", dir / "model.txt", "--input", dir / "narrow.csv", "--output",
                        dir / "out.csv", "--output-dir", dir / "p"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("f2") != std::string::npos);
  CHECK(bad.err.find("extra") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out.csv"));

  {
    std::ofstream(dir / "empty.csv") << "f0,f1,f2\n";
  }
  const auto empty = cli({"predict", "--model", dir / "model.txt", "--input", dir / "empty.csv", "--output",
                          dir / "out.csv", "--output-dir", dir / "p"});
  CHECK(empty.code == 0);
  CHECK(slurp(dir / "out.csv") == "f0,f1,f2,predicted_label,score\n");
}

TEST_CASE("usage errors exit 2 and write nothing") {
  TempDir dir("usage");
  CHECK(cli({"train", "--bogus"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"train", "--output-dir", dir.path.string()}).code == 2);
  {
    std::ofstream(dir / "survey.csv") << "Comedy,Music\n5,3\n1,2\n";
  }
  CHECK(cli({"train", "--input", dir / "survey.csv", "--output-dir", dir.path.string()}).code == 2);
  CHECK(cli({"train", "--input", dir / "survey.csv", "--target", "Comedy", "--algorithm", "forest", "--output-dir",
             dir.path.string()}).code == 2);
  CHECK(cli({"train", "--input", dir / "survey.csv", "--target", "Comedy", "--cost", "1,1,1,0", "--output-dir",
             dir.path.string()}).code == 2);
  CHECK(cli({"profile", "--input", dir / "survey.csv", "--target", "Comedy", "--threshold", "9", "--output-dir",
             dir.path.string()}).code == 2);
  CHECK_FALSE(fs::exists(dir / "resolved_config.json"));
  CHECK_FALSE(fs::exists(dir / "model.txt"));
}

TEST_CASE("data errors exit 1") {
  TempDir dir("data");
  CHECK(cli({"train", "--input", dir / "missing.csv", "--target", "Comedy", "--output-dir", dir.path.string()}).code ==
        1);
  {
    std::ofstream(dir / "survey.csv") << "Comedy,Music\n5,3\n1,9\n";
  }
  const auto r = cli({"train", "--input", dir / "survey.csv", "--target", "Comedy", "--output-dir", dir.path.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("Music") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "resolved_config.json"));
}

TEST_CASE("profile, metrics and select outputs") {
  TempDir dir("reports");
  {
    std::ofstream csv(dir / "survey.csv");
    csv << "Comedy,Music\n";
    for (int v : {1, 2, 2, 4, 5, 5, 5, 4}) csv << v << ",3\n";
  }
  REQUIRE(cli({"profile", "--input", dir / "survey.csv", "--target", "Comedy", "--output-dir", dir.path.string()})
              .code == 0);
  CHECK(slurp(dir / "profile.csv").find("Comedy,1,2,0,2,3,3,5,") != std::string::npos);

  REQUIRE(cli({"metrics", "--confusion", "219,55,169,349", "--output-dir", dir.path.string()}).code == 0);
  CHECK(slurp(dir / "metrics.csv").find("given,none,accuracy,0.7171717171717171") != std::string::npos);

  {
    std::ofstream(dir / "importance.csv") << "feature,score\na,0.5\nb,0.1\nc,-1\nd,2\n";
  }
  REQUIRE(cli({"select", "--importance", dir / "importance.csv", "--output-dir", dir.path.string()}).code == 0);
  CHECK(slurp(dir / "selected_features.csv") == "feature,score\na,0.5\nd,2\n");
}

TEST_CASE("replay reproduces the original outputs") {
  TempDir dir("replay");
  REQUIRE(cli({"synth", "--n", "80", "--d", "3", "--informative", "1", "--output-dir", dir.path.string()}).code == 0);
  REQUIRE(cli({"train", "--input", dir / "dataset.csv", "--algorithm", "bagged", "--trees", "10", "--seed", "5",
               "--output-dir", dir / "a"}).code == 0);
  const auto first = slurp(dir / "a/model.txt");
  fs::remove(dir / "a/model.txt");
  REQUIRE(cli({"replay", "--config", dir / "a/resolved_config.json"}).code == 0);
  CHECK(slurp(dir / "a/model.txt") == first);
}

TEST_CASE("output directory defaults to the environment") {
  TempDir dir("env");
  ::setenv("COSTENS_OUTPUT_DIR", dir.path.c_str(), 1);
  const auto r = cli({"metrics", "--confusion", "1,2,3,4"});
  ::unsetenv("COSTENS_OUTPUT_DIR");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "metrics.csv"));
}
